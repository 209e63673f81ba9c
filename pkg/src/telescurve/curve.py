"""Defining equations of telescopic curves and the matrices built from them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InadmissibleLambda, InexactDivision
from .polycore import Polynomial, Ring, determinant
from .semigroup import SemigroupData, validate_telescopic


@dataclass(frozen=True, order=True)
class LambdaSymbol:
    """Coefficient of ``x^j`` in the equation for ``x_i`` (``i`` is 1-based)."""

    i: int
    j: tuple

    def name(self) -> str:
        if all(v < 10 for v in self.j):
            return f"l{self.i}_{''.join(map(str, self.j))}"
        return f"l{self.i}_{'_'.join(map(str, self.j))}"

    def key(self) -> str:
        return f"{self.i}:({','.join(map(str, self.j))})"

    @classmethod
    def parse(cls, key: str) -> "LambdaSymbol":
        i, rest = key.split(":", 1)
        rest = rest.strip().strip("()")
        return cls(int(i), tuple(int(v) for v in rest.split(",")))


def admissible_lambdas(sg: SemigroupData):
    out = []
    for i in range(2, sg.m + 1):
        bound = sg.a[i - 1] * sg.c[i - 1]
        ranges = [range(bound // sg.a[0] + 1)] + [range(sg.c[k]) for k in range(1, sg.m)]
        js = [j for j in itertools.product(*ranges) if sg.weight(j) < bound]
        js.sort(key=lambda j: (-sg.weight(j), j))
        out.extend(LambdaSymbol(i, j) for j in js)
    return out


def lambda_weight(sg: SemigroupData, lam: LambdaSymbol) -> int:
    return sg.a[lam.i - 1] * sg.c[lam.i - 1] - sg.weight(lam.j)


@dataclass
class CurveFamily:
    sg: SemigroupData
    ring: Ring
    F: list  # F_2..F_m in the x variables
    lambdas: list  # symbols present as ring variables (symbolic mode)
    mode: str  # "symbolic" | "specialized"
    values: dict = field(default_factory=dict)  # LambdaSymbol -> rational (specialized)
    _nf_cache: dict = field(default_factory=dict, repr=False)

    @property
    def m(self):
        return self.sg.m

    def x(self, k):
        return self.ring.gen(f"x{k}")

    def y(self, k):
        return self.ring.gen(f"y{k}")

    def xs(self):
        return [self.x(k) for k in range(1, self.m + 1)]

    def ys(self):
        return [self.y(k) for k in range(1, self.m + 1)]

    def lam(self, sym: LambdaSymbol):
        if self.mode == "symbolic":
            return self.ring.gen(sym.name())
        return self.ring.const(self.values.get(sym, 0))

    def mono(self, exps, var="x"):
        return self.ring.monomial({f"{var}{k + 1}": e for k, e in enumerate(exps) if e})

    def swap(self, p: Polynomial) -> Polynomial:
        """Exchange the x and y variable sets."""
        mapping = {}
        for k in range(1, self.m + 1):
            mapping[f"x{k}"] = f"y{k}"
            mapping[f"y{k}"] = f"x{k}"
        return p.rename(self.ring, mapping)

    def at_y(self, p: Polynomial) -> Polynomial:
        """Rewrite an x-polynomial in the y variables."""
        return p.rename(self.ring, {f"x{k}": f"y{k}" for k in range(1, self.m + 1)})

    def leading_monomial(self, i: int):
        """``prod_j x_j^{ell_{i,j}}`` for equation ``i`` (1-based)."""
        return self.mono(self.sg.ell[i])

    def normal_form(self, p: Polynomial) -> Polynomial:
        return NormalForm.for_family(self).reduce(p)

    def lambda_ring_values(self):
        """Numeric image of each ring variable after specialisation."""
        return {sym.name(): self.values.get(sym, 0) for sym in self.lambdas}


def build_family(sg, lambda_mode="symbolic") -> CurveFamily:
    """``lambda_mode`` is ``"symbolic"``, ``"zero"`` or a mapping from
    :class:`LambdaSymbol` (or its ``"i:(j..)"`` key) to a rational."""
    if not isinstance(sg, SemigroupData):
        sg = validate_telescopic(sg)
    admissible = admissible_lambdas(sg)
    m = sg.m
    names = [f"x{k}" for k in range(1, m + 1)] + [f"y{k}" for k in range(1, m + 1)]
    weights = list(sg.a) + list(sg.a)
    values = {}
    if lambda_mode == "symbolic":
        mode = "symbolic"
        lambdas = admissible
        names += [s.name() for s in lambdas]
        weights += [lambda_weight(sg, s) for s in lambdas]
    else:
        mode = "specialized"
        lambdas = []
        if lambda_mode not in ("zero", None):
            allowed = set(admissible)
            for key, val in dict(lambda_mode).items():
                sym = LambdaSymbol.parse(key) if isinstance(key, str) else key
                if sym not in allowed:
                    raise InadmissibleLambda(f"{sym.key()} is not an admissible coefficient")
                val = Fraction(val) if not isinstance(val, (int, Fraction)) else val
                if val:
                    values[sym] = val
    ring = Ring(names, weights)
    fam = CurveFamily(sg=sg, ring=ring, F=[], lambdas=lambdas, mode=mode, values=values)
    for i in range(2, m + 1):
        Fi = fam.x(i) ** sg.c[i - 1] - fam.leading_monomial(i)
        for sym in admissible:
            if sym.i == i:
                coeff = fam.lam(sym)
                if not coeff.is_zero():
                    Fi = Fi - coeff * fam.mono(sym.j)
        fam.F.append(Fi)
    return fam


def specialize(fam: CurveFamily, values) -> CurveFamily:
    return build_family(fam.sg, values)


def random_lambdas(sg: SemigroupData, rng, span: int = 5) -> dict:
    """Seeded rational values ``p/q`` with ``|p| <= span``, ``1 <= q <= 3``."""
    return {sym: Fraction(int(rng.integers(-span, span + 1)), int(rng.integers(1, 4)))
            for sym in admissible_lambdas(sg)}


def substitute_lambdas(fam: CurveFamily, p: Polynomial, target: CurveFamily) -> Polynomial:
    """Evaluate the lambda variables of a symbolic ``p`` at ``target``'s values."""
    images = []
    for name in fam.ring.names:
        if name in target.ring.index:
            images.append(target.ring.gen(name))
        else:
            sym = next(s for s in fam.lambdas if s.name() == name)
            images.append(target.values.get(sym, 0))
    return p.substitute(target.ring, images)


class NormalForm:
    """Reduction to the normal-form monomial box modulo the curve equations.

    Each variable group (``x`` for P, ``y`` for Q) is reduced independently by
    the rewriting ``x_i^{c_i} -> x^{ell_i} + sum lambda x^J``.
    """

    def __init__(self, fam: CurveFamily, groups):
        self.fam = fam
        self.ring = fam.ring
        self.groups = [tuple(self.ring.index[n] for n in grp) for grp in groups]
        sg = fam.sg
        self.c = sg.c
        # rules[i] = list of (group-exponent J, extra ring exponent, coeff)
        self.rules = {}
        for i in range(2, sg.m + 1):
            Fi = fam.F[i - 2]
            lead = [0] * sg.m
            lead[i - 1] = sg.c[i - 1]
            rhs = []
            xi = [self.ring.index[f"x{k}"] for k in range(1, sg.m + 1)]
            for e, coeff in Fi.terms.items():
                J = tuple(e[v] for v in xi)
                if list(J) == lead:
                    continue
                rest = tuple(0 if v in xi else k for v, k in enumerate(e))
                rhs.append((J, rest, -coeff))
            self.rules[i] = rhs
        self._memo = [dict() for _ in self.groups]

    @classmethod
    def for_family(cls, fam: CurveFamily):
        key = "xy"
        if key not in fam._nf_cache:
            m = fam.m
            fam._nf_cache[key] = cls(fam, [[f"x{k}" for k in range(1, m + 1)],
                                           [f"y{k}" for k in range(1, m + 1)]])
        return fam._nf_cache[key]

    def _in_box(self, J):
        c = self.c
        return all(J[i] < c[i] for i in range(1, len(J)))

    def _reduce_group(self, gi: int, J: tuple):
        """Normal form of the group monomial ``J`` as {full exponent: coeff}."""
        memo = self._memo[gi]
        if J in memo:
            return memo[J]
        grp = self.groups[gi]
        if self._in_box(J):
            e = [0] * self.ring.nvars
            for v, k in zip(grp, J):
                e[v] = k
            res = {tuple(e): 1}
            memo[J] = res
            return res
        i = max(k for k in range(1, len(J)) if J[k] >= self.c[k]) + 1
        base = list(J)
        base[i - 1] -= self.c[i - 1]
        res = {}
        for Jr, rest, coeff in self.rules[i]:
            sub = self._reduce_group(gi, tuple(b + r for b, r in zip(base, Jr)))
            for e, c2 in sub.items():
                ne = tuple(a + b for a, b in zip(e, rest)) if any(rest) else e
                v = res.get(ne, 0) + coeff * c2
                if v:
                    res[ne] = v
                else:
                    res.pop(ne, None)
        memo[J] = res
        return res

    def reduce(self, p: Polynomial) -> Polynomial:
        out = {}
        groups = self.groups
        for e, coeff in p.terms.items():
            parts = [tuple(e[v] for v in grp) for grp in groups]
            if all(self._in_box(J) for J in parts):
                out[e] = out.get(e, 0) + coeff
                continue
            rest = list(e)
            for grp in groups:
                for v in grp:
                    rest[v] = 0
            acc = {tuple(rest): coeff}
            for gi, J in enumerate(parts):
                red = self._reduce_group(gi, J)
                nxt = {}
                for ea, ca in acc.items():
                    for eb, cb in red.items():
                        ne = tuple(a + b for a, b in zip(ea, eb))
                        nxt[ne] = nxt.get(ne, 0) + ca * cb
                acc = nxt
            for ne, v in acc.items():
                out[ne] = out.get(ne, 0) + v
        return Polynomial(self.ring, {e: c for e, c in out.items() if c})


@dataclass
class MatrixBundle:
    G: list = None
    detGk: list = None
    H: list = None
    detH: Polynomial = None


def jacobian(fam: CurveFamily, bundle: MatrixBundle | None = None) -> MatrixBundle:
    """``G = (dF_i/dy_j)`` at the point Q and the maximal minors ``det G_k``."""
    bundle = bundle or MatrixBundle()
    Fy = [fam.at_y(Fi) for Fi in fam.F]
    G = [[Fi.diff(f"y{j}") for j in range(1, fam.m + 1)] for Fi in Fy]
    detGk = []
    for k in range(fam.m):
        minor = [row[:k] + row[k + 1:] for row in G]
        d = determinant(minor)
        detGk.append(d if isinstance(d, Polynomial) else fam.ring.const(d))
    bundle.G, bundle.detGk = G, detGk
    return bundle


def h_matrix(fam: CurveFamily, bundle: MatrixBundle | None = None) -> MatrixBundle:
    bundle = bundle or MatrixBundle()
    m = fam.m
    ring = fam.ring
    H = []
    for Fi in fam.F:
        row = []
        for j in range(2, m + 1):
            first = {f"x{k}": f"y{k}" for k in range(1, j)}
            second = {f"x{k}": f"y{k}" for k in range(1, j + 1)}
            num = Fi.rename(ring, first) - Fi.rename(ring, second)
            try:
                row.append(num.exact_div(fam.x(j) - fam.y(j)))
            except InexactDivision as exc:
                raise InexactDivision(f"h_{Fi}, j={j}: {exc}") from exc
        H.append(row)
    d = determinant(H)
    bundle.H = H
    bundle.detH = d if isinstance(d, Polynomial) else ring.const(d)
    return bundle


def matrices(fam: CurveFamily) -> MatrixBundle:
    return h_matrix(fam, jacobian(fam))


def detG1_at_x(fam: CurveFamily, bundle: MatrixBundle) -> Polynomial:
    return fam.swap(bundle.detGk[0])


@dataclass(frozen=True)
class Differential:
    """``sign * numerator / denominator d(variable)``."""

    numerator: Polynomial
    denominator: Polynomial
    variable: str
    sign: int = -1

    def __str__(self):
        sgn = "-" if self.sign < 0 else ""
        return f"{sgn}({self.numerator})/({self.denominator}) d{self.variable}"


def holomorphic_basis(fam: CurveFamily, bundle: MatrixBundle | None = None):
    """``du_i = -phi_{g+1-i} / det G_1 dx_1`` for ``i = 1..g``."""
    bundle = bundle or jacobian(fam)
    g = fam.sg.genus
    den = detG1_at_x(fam, bundle)
    out = []
    for i in range(1, g + 1):
        out.append(Differential(fam.mono(fam.sg.phi(g + 1 - i)), den, "x1", -1))
    return out


def expected_detGk_degree(sg: SemigroupData, k: int) -> int:
    return sum(sg.a[i] * sg.c[i] for i in range(1, sg.m)) - sum(sg.a) + sg.a[k - 1]


def expected_detH_degree(sg: SemigroupData) -> int:
    return sum(sg.a[i] * (sg.c[i] - 1) for i in range(1, sg.m))


def leading_coefficient_detGk(fam: CurveFamily, bundle: MatrixBundle, k: int):
    """Coefficient of the top monomial ``y^gamma`` in the normal form of
    ``det G_k``, together with the reduced polynomial."""
    sg = fam.sg
    deg = expected_detGk_degree(sg, k)
    gamma = sg.representation(deg)
    red = fam.normal_form(bundle.detGk[k - 1])
    e = [0] * fam.ring.nvars
    for idx, v in enumerate(gamma):
        e[fam.ring.index[f"y{idx + 1}"]] = v
    return red.terms.get(tuple(e), 0), gamma, red


def hyperelliptic_discriminant_ok(fam: CurveFamily) -> bool:
    """Smoothness proxy for ``(2, s)`` families: the right-hand side of
    ``x_2^2 = f(x_1)`` (after completing the square) has no repeated root."""
    sg = fam.sg
    if sg.m != 2 or sg.a[0] != 2 or fam.mode != "specialized":
        raise ValueError("only specialised (2, s) families are supported")
    # x2^2 - h(x1) x2 - f(x1) = 0  ->  (x2 - h/2)^2 = f + h^2/4
    s = sg.a[1]
    f = [Fraction(0)] * (s + 1)
    h = [Fraction(0)] * (s + 1)
    f[s] = Fraction(1)
    for sym, val in fam.values.items():
        if sym.j[1] == 0:
            f[sym.j[0]] += val
        else:
            h[sym.j[0]] += val
    q = [Fraction(0)] * (2 * s + 1)
    for i, hi in enumerate(h):
        for j, hj in enumerate(h):
            q[i + j] += hi * hj / 4
    poly = [f[i] + (q[i] if i < len(q) else 0) for i in range(s + 1)]
    deriv = [i * poly[i] for i in range(1, len(poly))]
    return len(_upoly_gcd(poly, deriv)) == 1


def _strip(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _upoly_gcd(a, b):
    a, b = _strip(a), _strip(b)
    while b:
        r = list(a)
        while len(r) >= len(b) and r:
            q = r[-1] / b[-1]
            shift = len(r) - len(b)
            for i, bi in enumerate(b):
                r[shift + i] -= q * bi
            r = _strip(r)
        a, b = b, r
    return a


def _xy_exponent(fam: CurveFamily, I, J):
    e = [0] * fam.ring.nvars
    for k, (i, j) in enumerate(zip(I, J), start=1):
        e[fam.ring.index[f"x{k}"]] = i
        e[fam.ring.index[f"y{k}"]] = j
    return tuple(e)


def coefficient_spot_checks(fam: CurveFamily, bundle: MatrixBundle | None = None):
    """Exact coefficients of ``det G_1(Q) det H`` and ``dH/dy_i det G_i(Q)`` at
    the monomials fixed by ``phi_g`` and ``phi_{g+1}``."""
    from .report import VerificationReport

    bundle = bundle or matrices(fam)
    sg = fam.sg
    g = sg.genus
    k, ell = sg.phi(g), sg.phi(g + 1)
    rep = VerificationReport()

    def coeff(p, I, J):
        return fam.normal_form(p).terms.get(_xy_exponent(fam, I, J), 0)

    I = (0,) + k[1:]
    top = coeff(bundle.detGk[0] * bundle.detH, I, (k[0] + ell[0] + 2,) + ell[1:])
    rep.exact("detG1_detH_coefficient", "gamma[0,k;k1+l1+2,l] = a_1", top, sg.a[0])
    J = (k[0] + ell[0] + 1,) + ell[1:]
    for i in range(1, fam.m + 1):
        p = bundle.detH.diff(f"y{i}") * bundle.detGk[i - 1]
        got = coeff(p, I, J)
        want = 0 if i == 1 else (sg.c[i - 1] - 1 - k[i - 1]) * (-1) ** (i + 1) * sg.a[i - 1]
        rep.exact(f"dH_detG_coefficient[i={i}]", "delta[0,k;k1+l1+1,l]", got, want)
    return rep
