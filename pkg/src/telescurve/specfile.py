"""Curve-spec JSON files.

    {"sequence": [2, 5],
     "lambda": {"2:(3,0)": [-5.0, 0.0], "2:(1,0)": "4"},
     "periods": "g2_periods.json"}

Lambda values are ``[re, im]`` pairs, exact rational strings or plain numbers.
``periods`` is an optional path (relative to the spec file) of a period cache.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .curve import CurveFamily, LambdaSymbol, admissible_lambdas, build_family
from .errors import InadmissibleLambda, MalformedSpec
from .semigroup import SemigroupData, validate_telescopic


def _value(v):
    if isinstance(v, bool):
        raise MalformedSpec(f"bad lambda value {v!r}")
    if isinstance(v, (list, tuple)):
        if len(v) != 2 or not all(isinstance(t, (int, float)) for t in v):
            raise MalformedSpec(f"expected [re, im], got {v!r}")
        return complex(v[0], v[1])
    if isinstance(v, str):
        try:
            return Fraction(v)
        except ValueError as exc:
            raise MalformedSpec(f"bad rational {v!r}") from exc
    if isinstance(v, (int, float)):
        return v
    raise MalformedSpec(f"bad lambda value {v!r}")


@dataclass
class CurveSpecFile:
    sequence: list
    lambdas: dict = field(default_factory=dict)  # LambdaSymbol -> Fraction | float | complex
    periods: Path | None = None

    @property
    def sg(self) -> SemigroupData:
        return validate_telescopic(self.sequence)

    @classmethod
    def from_dict(cls, d, base: Path | None = None) -> "CurveSpecFile":
        if not isinstance(d, dict) or "sequence" not in d:
            raise MalformedSpec("spec must be an object with a 'sequence' field")
        seq = d["sequence"]
        if not isinstance(seq, list) or not all(isinstance(a, int) and not isinstance(a, bool)
                                                for a in seq):
            raise MalformedSpec("'sequence' must be a list of integers")
        sg = validate_telescopic(seq)
        allowed = set(admissible_lambdas(sg))
        lambdas = {}
        raw = d.get("lambda", {})
        if not isinstance(raw, dict):
            raise MalformedSpec("'lambda' must be an object")
        for key, val in raw.items():
            try:
                sym = LambdaSymbol.parse(key)
            except ValueError as exc:
                raise MalformedSpec(f"bad lambda key {key!r}") from exc
            if sym not in allowed:
                raise InadmissibleLambda(f"{key} is not an admissible coefficient for {tuple(seq)}")
            lambdas[sym] = _value(val)
        periods = d.get("periods")
        if periods is not None:
            periods = Path(periods)
            if base is not None and not periods.is_absolute():
                periods = base / periods
        return cls(list(seq), lambdas, periods)

    @classmethod
    def load(cls, path) -> "CurveSpecFile":
        path = Path(path)
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise MalformedSpec(f"{path}: {exc}") from exc
        return cls.from_dict(data, path.parent)

    def is_exact(self) -> bool:
        """True when every lambda is real, so the family can be built over Q."""
        return all(not isinstance(v, complex) or v.imag == 0 for v in self.lambdas.values())

    def exact_values(self) -> dict:
        out = {}
        for sym, v in self.lambdas.items():
            if isinstance(v, complex):
                if v.imag:
                    raise MalformedSpec(f"{sym.key()} is not real")
                v = v.real
            out[sym] = v if isinstance(v, Fraction) else Fraction(str(v))
        return out

    def family(self) -> CurveFamily:
        """The exact family: specialised when lambdas are given, symbolic otherwise."""
        if not self.lambdas:
            return build_family(self.sg, "symbolic")
        return build_family(self.sg, self.exact_values())

    def numeric_lambdas(self) -> dict:
        return {sym.key(): complex(v) for sym, v in self.lambdas.items()}

    def to_dict(self) -> dict:
        lam = {}
        for sym, v in sorted(self.lambdas.items()):
            c = complex(v)
            lam[sym.key()] = str(v) if isinstance(v, Fraction) else [c.real, c.imag]
        d = {"sequence": list(self.sequence), "lambda": lam}
        if self.periods is not None:
            d["periods"] = str(self.periods)
        return d
