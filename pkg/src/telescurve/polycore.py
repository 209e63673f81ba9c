"""Sparse multivariate polynomials over Q with a weighted grading.

A :class:`Ring` fixes the ordered variable names and their weights; a
:class:`Polynomial` maps dense exponent tuples to rational coefficients.
Coefficients are kept as ``int`` whenever possible and as
:class:`fractions.Fraction` otherwise.  No floating point is used here.
"""

from __future__ import annotations

import operator
from fractions import Fraction
from functools import lru_cache

from .errors import InexactDivision, MixedUniverse, NonSquare

_add = operator.add


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Ring:
    """Ordered variables with integer weights."""

    def __init__(self, names, weights=None):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.weights = tuple(weights) if weights is not None else (1,) * len(self.names)
        self.nvars = len(self.names)
        self.index = {n: i for i, n in enumerate(self.names)}
        self.zero_exp = (0,) * self.nvars

    def __eq__(self, other):
        return isinstance(other, Ring) and self.names == other.names and self.weights == other.weights

    def __hash__(self):
        return hash((self.names, self.weights))

    def __repr__(self):
        return f"Ring({', '.join(self.names)})"

    def gen(self, name) -> "Polynomial":
        i = self.index[name] if isinstance(name, str) else name
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {self.zero_exp: c})

    def monomial(self, exps: dict, coeff=1) -> "Polynomial":
        e = [0] * self.nvars
        for name, k in exps.items():
            e[self.index[name] if isinstance(name, str) else name] += k
        return Polynomial(self, {tuple(e): coeff})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def weight(self, exp) -> int:
        return sum(w * e for w, e in zip(self.weights, exp))


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms=None, _clean=False):
        self.ring = ring
        if _clean:
            self.terms = terms
        else:
            self.terms = {}
            for e, c in (terms or {}).items():
                if c != 0:
                    self.terms[tuple(e)] = _norm(c)

    # -- construction helpers ------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise MixedUniverse(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _norm(v)
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self.ring.zero()
            return Polynomial(self.ring, {e: _norm(c * other) for e, c in self.terms.items()},
                              _clean=True)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self.terms) < len(other.terms):
            a, b = self.terms, other.terms
        else:
            a, b = other.terms, self.terms
        out = {}
        get = out.get
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(map(_add, ea, eb))
                out[e] = get(e, 0) + ca * cb
        return Polynomial(self.ring, {e: _norm(c) for e, c in out.items() if c}, _clean=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        return self.exact_div(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- inspection ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {self.ring.zero_exp}

    def constant(self):
        return self.terms.get(self.ring.zero_exp, 0)

    def __len__(self):
        return len(self.terms)

    def leading(self):
        """Lex-leading (exponent, coefficient)."""
        e = max(self.terms)
        return e, self.terms[e]

    def weighted_degrees(self):
        return {self.ring.weight(e) for e in self.terms}

    def variables(self):
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return sorted(used)

    def degree_in(self, var) -> int:
        i = self.ring.index[var] if isinstance(var, str) else var
        return max((e[i] for e in self.terms), default=0)

    # -- calculus / substitution --------------------------------------------
    def diff(self, var) -> "Polynomial":
        i = self.ring.index[var] if isinstance(var, str) else var
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = list(e)
                ne[i] = k - 1
                out[tuple(ne)] = c * k
        return Polynomial(self.ring, out, _clean=True)

    def substitute(self, new_ring: Ring, images) -> "Polynomial":
        """Replace variable ``i`` by ``images[i]`` (a Polynomial of
        ``new_ring`` or a rational)."""
        imgs = [im if isinstance(im, Polynomial) else new_ring.const(im) for im in images]
        powers = [{0: new_ring.one(), 1: im} for im in imgs]

        def pw(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = pw(i, k - 1) * imgs[i]
            return cache[k]

        # Fast path: images that are single monomials with coefficient 1.
        simple = all(len(im.terms) == 1 and next(iter(im.terms.values())) == 1 for im in imgs)
        if simple:
            img_exps = [next(iter(im.terms)) for im in imgs]
            out = {}
            zero = new_ring.zero_exp
            for e, c in self.terms.items():
                ne = zero
                for i, k in enumerate(e):
                    if k:
                        ne = tuple(a + k * b for a, b in zip(ne, img_exps[i]))
                out[ne] = out.get(ne, 0) + c
            return Polynomial(new_ring, out)

        result = new_ring.zero()
        for e, c in self.terms.items():
            t = new_ring.const(c)
            for i, k in enumerate(e):
                if k:
                    t = t * pw(i, k)
            result = result + t
        return result

    def rename(self, new_ring: Ring, mapping=None) -> "Polynomial":
        """Move into ``new_ring`` matching variables by name (or ``mapping``)."""
        mapping = mapping or {}
        images = []
        for name in self.ring.names:
            images.append(new_ring.gen(mapping.get(name, name)))
        return self.substitute(new_ring, images)

    def evaluate(self, values):
        """Numeric value; ``values`` is a sequence indexed like the ring."""
        exact = _all_exact(values)
        total = 0
        cache = {}
        for e, c in self.terms.items():
            t = c if exact or not isinstance(c, Fraction) else float(c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = values[i] ** k
                    t = t * cache[key]
            total = total + t
        return total

    def exact_div(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if other.is_constant():
            return self * (Fraction(1) / Fraction(other.constant()))
        lead_e, lead_c = other.leading()
        rem = dict(self.terms)
        quo = {}
        while rem:
            e = max(rem)
            c = rem[e]
            qe = tuple(a - b for a, b in zip(e, lead_e))
            if any(k < 0 for k in qe):
                raise InexactDivision(f"remainder term {e} not divisible by {lead_e}")
            qc = _norm(Fraction(c) / lead_c)
            quo[qe] = qc
            for oe, oc in other.terms.items():
                te = tuple(map(_add, qe, oe))
                v = rem.get(te, 0) - qc * oc
                if v:
                    rem[te] = _norm(v)
                else:
                    rem.pop(te, None)
        return Polynomial(self.ring, quo)

    # -- presentation --------------------------------------------------------
    def sorted_terms(self):
        """Deterministic order: descending weight, then descending exponents."""
        return sorted(self.terms.items(), key=lambda t: (-self.ring.weight(t[0]), tuple(-k for k in t[0])))

    def __str__(self):
        return self.format()

    def format(self, names=None, mul="*", power="^"):
        names = names or self.ring.names
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = mul.join(n if k == 1 else f"{n}{power}{k}" for n, k in zip(names, e) if k)
            if not mono:
                s = str(abs(c))
            elif abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}{mul}{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, s))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, s in parts[1:]:
            out += f" {sign} {s}"
        return out

    def __repr__(self):
        return f"Polynomial({self.format()})"


def _all_exact(values):
    return all(isinstance(v, (int, Fraction)) for v in values)


# -- module-level operations ------------------------------------------------

def poly_arith(op: str, p: Polynomial, q: Polynomial) -> Polynomial:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "exact_div":
        return p.exact_div(q)
    raise ValueError(f"unknown operation {op!r}")


def determinant(matrix):
    """Exact determinant by Laplace expansion with memoised minors."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise NonSquare(f"{n} rows but row lengths {[len(r) for r in matrix]}")
    if n == 0:
        return 1

    @lru_cache(maxsize=None)
    def minor(row: int, cols: tuple):
        if row == n:
            return None  # empty product marker
        total = None
        for pos, j in enumerate(cols):
            entry = matrix[row][j]
            if _is_zero(entry):
                continue
            rest = minor(row + 1, cols[:pos] + cols[pos + 1:])
            term = entry if rest is None else entry * rest
            if pos % 2:
                term = -term
            total = term if total is None else total + term
        return 0 if total is None else total

    result = minor(0, tuple(range(n)))
    return result


def _is_zero(x):
    if isinstance(x, Polynomial):
        return x.is_zero()
    return x == 0


def cofactor_det(matrix):
    """Plain recursive cofactor expansion, used as an independent oracle."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total = 0
    for j in range(n):
        sub = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = matrix[0][j] * cofactor_det(sub)
        total = total + term if j % 2 == 0 else total - term
    return total


def coefficient_of(p: Polynomial, exps: dict) -> Polynomial:
    """Polynomial in the remaining variables multiplying the monomial ``exps``.

    ``exps`` maps variable names (or indices) to exponents; every variable
    named there is fixed, the others are kept.
    """
    ring = p.ring
    fixed = {ring.index[k] if isinstance(k, str) else k: v for k, v in exps.items()}
    out = {}
    for e, c in p.terms.items():
        if all(e[i] == k for i, k in fixed.items()):
            ne = tuple(0 if i in fixed else k for i, k in enumerate(e))
            out[ne] = out.get(ne, 0) + c
    return Polynomial(ring, out)


def homogeneous_check(p: Polynomial):
    """Common weighted degree, or ``("not-homogeneous", t1, t2)``."""
    if not p.terms:
        return 0
    first = None
    for e in sorted(p.terms):
        w = p.ring.weight(e)
        if first is None:
            first = (e, w)
        elif w != first[1]:
            return ("not-homogeneous", first[0], e)
    return first[1]


def _rref(columns, rhs):
    rows = {}
    for j, col in enumerate(columns):
        for r, v in col.items():
            rows.setdefault(r, {})[j] = Fraction(v)
    for r in rhs:
        rows.setdefault(r, {})
    keys = sorted(rows, key=repr)
    mat = [rows[k] for k in keys]
    b = [Fraction(rhs.get(k, 0)) for k in keys]
    pivots = []  # (row index, column)
    used = [False] * len(mat)
    for j in range(len(columns)):
        piv = next((i for i in range(len(mat)) if not used[i] and mat[i].get(j)), None)
        if piv is None:
            continue
        used[piv] = True
        pr = mat[piv]
        inv = 1 / pr[j]
        for k in list(pr):
            pr[k] *= inv
        b[piv] *= inv
        for i in range(len(mat)):
            if i != piv and mat[i].get(j):
                f = mat[i][j]
                row = mat[i]
                for k, v in pr.items():
                    nv = row.get(k, 0) - f * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
                b[i] -= f * b[piv]
        pivots.append((piv, j))
    return mat, b, pivots, used


def rational_solve(columns, rhs):
    """Particular solution of ``sum_j t_j columns[j] = rhs`` over Q.

    ``columns`` and ``rhs`` are sparse vectors ``{row_key: value}``.  Free
    variables are set to zero.  Returns ``(solution, rank)`` or
    ``(None, rank)`` when the system is inconsistent.
    """
    mat, b, pivots, used = _rref(columns, rhs)
    for i in range(len(mat)):
        if not used[i] and b[i] != 0:
            return None, len(pivots)
    sol = [Fraction(0)] * len(columns)
    for i, j in pivots:
        sol[j] = b[i]
    return [_norm(s) for s in sol], len(pivots)


def rational_nullspace(columns):
    """Basis of ``{t : sum_j t_j columns[j] = 0}``, one vector per free column."""
    mat, _, pivots, _ = _rref(columns, {})
    pivot_cols = {j for _, j in pivots}
    out = []
    for f in range(len(columns)):
        if f in pivot_cols:
            continue
        v = [Fraction(0)] * len(columns)
        v[f] = Fraction(1)
        for i, j in pivots:
            v[j] = -mat[i].get(f, 0)
        out.append([_norm(x) for x in v])
    return out
