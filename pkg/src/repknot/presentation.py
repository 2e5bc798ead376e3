"""Wirtinger presentations and the classical invariants read off from them.

Words are tuples of nonzero ints: ``r + 1`` is generator ``S_r`` and
``-(r + 1)`` its inverse.  At a crossing with over-arc ``o``, incoming
under-arc ``a`` and outgoing under-arc ``b`` the relation is

    S_o^e S_a S_o^-e = S_b,      e = crossing sign,

and the relator word is ``S_o^e S_a S_o^-e S_b^-1``.

Everything in this module is exact: integers, fractions and integer-coefficient
Laurent polynomials.
"""
from dataclasses import dataclass, field
from fractions import Fraction

from . import diagram as dg
from .errors import DisconnectedDiagram, OracleMismatch
from .intmat import bareiss_det


@dataclass(frozen=True)
class Relation:
    over: int
    epsilon: int
    into: int
    out: int

    def relator(self):
        o, a, b = self.over + 1, self.into + 1, self.out + 1
        e = self.epsilon
        return (e * o, a, -e * o, -b)


@dataclass(frozen=True)
class WirtingerPresentation:
    generators: tuple            # component id of each generator
    relations: tuple
    distinguished_meridian: int = 0

    @property
    def n_generators(self):
        return len(self.generators)

    def relators(self):
        return [rel.relator() for rel in self.relations]

    @property
    def n_components(self):
        return len(set(self.generators))


def wirtinger(d):
    rels = tuple(Relation(c.over, c.sign, c.under_in, c.under_out) for c in d.crossings)
    gens = tuple(comp for _, comp in d.arcs)
    mu = min(a for a, comp in d.arcs if comp == 0)
    return WirtingerPresentation(generators=gens, relations=rels, distinguished_meridian=mu)


def fox_walk(word):
    """Terms of the free derivative of ``word``.

    Yields ``(generator, sign, prefix)`` so that
    d(word)/d(S_g) = sum of sign * prefix over terms with that generator.
    For a positive letter the prefix is the subword before it; for an
    inverse letter it includes the letter itself.  The same walk expands
    1-cocycles evaluated on the word.
    """
    for k, letter in enumerate(word):
        if letter > 0:
            yield letter - 1, 1, word[:k]
        else:
            yield -letter - 1, -1, word[:k + 1]


# ---------------------------------------------------------------------------
# Laurent polynomials in one variable

class LaurentPolynomial:
    """Integer Laurent polynomial stored as {exponent: coefficient}."""

    def __init__(self, coeffs=None):
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if c}

    @classmethod
    def monomial(cls, exponent, coeff=1):
        return cls({exponent: coeff})

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out)

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPolynomial({e: c * other for e, c in self.coeffs.items()})
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, LaurentPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __call__(self, t):
        t = Fraction(t)
        total = sum(c * t ** e for e, c in self.coeffs.items())
        return int(total) if total.denominator == 1 else total

    def is_zero(self):
        return not self.coeffs

    @property
    def low(self):
        return min(self.coeffs) if self.coeffs else 0

    @property
    def high(self):
        return max(self.coeffs) if self.coeffs else 0

    def shift(self, k):
        return LaurentPolynomial({e + k: c for e, c in self.coeffs.items()})

    def coefficient_list(self):
        """Coefficients from the lowest to the highest exponent."""
        return [self.coeffs.get(e, 0) for e in range(self.low, self.high + 1)]

    def is_symmetric(self):
        return all(self.coeffs.get(-e, 0) == c for e, c in self.coeffs.items())

    def normalized(self):
        """Multiply by +-t^k to centre the exponents and make the value at 1 positive.

        The exponent span must be even (always true for knots).
        """
        if self.is_zero():
            return self
        span = self.low + self.high
        if span % 2:
            raise ValueError("odd exponent span cannot be centred")
        p = self.shift(-span // 2)
        return -p if p(1) < 0 else p

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            terms.append(f"{c}" if e == 0 else f"{c}*t^{e}")
        return " + ".join(terms)


def abelianize(word):
    return sum(1 if x > 0 else -1 for x in word)


def fox_matrix(p):
    """Abelianized Fox Jacobian: rows are relators, columns generators."""
    rows = []
    for word in p.relators():
        row = [LaurentPolynomial() for _ in range(p.n_generators)]
        for g, sign, prefix in fox_walk(word):
            row[g] = row[g] + LaurentPolynomial.monomial(abelianize(prefix), sign)
        rows.append(row)
    return rows


def alexander_matrix(p):
    """Working matrix: Fox matrix minus its last row and the meridian column."""
    full = fox_matrix(p)
    keep = [j for j in range(p.n_generators) if j != p.distinguished_meridian]
    return [[row[j] for j in keep] for row in full[:-1]]


def _is_square(p):
    rows = max(len(p.relations) - 1, 0)
    return rows == p.n_generators - 1


def matrix_at(M, t):
    return [[entry(t) for entry in row] for row in M]


def alexander_polynomial(p):
    """Determinant of the working matrix, as an unnormalized Laurent polynomial.

    Computed by exact evaluation at integer points and Lagrange interpolation;
    zero when the working matrix is not square (split links).
    """
    if not _is_square(p):
        return LaurentPolynomial()
    M = alexander_matrix(p)
    if not M:
        return LaurentPolynomial.monomial(0)
    shifts = []
    poly_rows = []
    for row in M:
        nonzero = [e for e in row if not e.is_zero()]
        low = min((e.low for e in nonzero), default=0)
        shifts.append(low)
        poly_rows.append([e.shift(-low) for e in row])
    degree = sum(max((e.high for e in row if not e.is_zero()), default=0) for row in poly_rows)
    xs = list(range(2, degree + 3))
    ys = [bareiss_det(matrix_at(poly_rows, x)) for x in xs]
    coeffs = _interpolate(xs, ys)
    poly = LaurentPolynomial({e: c for e, c in enumerate(coeffs)})
    return poly.shift(sum(shifts))


def _interpolate(xs, ys):
    """Integer coefficients of the polynomial through the points (exact)."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        # basis polynomial prod_{j != i} (t - x_j) / (x_i - x_j)
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        for k in range(n):
            coeffs[k] += ys[i] * basis[k] / denom
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise OracleMismatch("non-integral Alexander coefficient")
        out.append(int(c))
    return out


def knot_alexander(p):
    """Normalized Alexander polynomial of a knot: symmetric, value 1 at t = 1."""
    raw = alexander_polynomial(p)
    if abs(raw(1)) != 1:
        raise OracleMismatch(f"Alexander polynomial has value {raw(1)} at t = 1")
    norm = raw.normalized()
    if not norm.is_symmetric():
        raise OracleMismatch(f"normalized Alexander polynomial {norm} is not symmetric")
    return norm


def fox_determinant(p):
    """|det| of the working matrix at t = -1."""
    if not _is_square(p):
        return 0
    return abs(bareiss_det(matrix_at(alexander_matrix(p), -1)))


def goeritz_determinant(d):
    try:
        return abs(dg.goeritz(d).determinant)
    except DisconnectedDiagram:
        return 0


def determinant(d, p=None):
    """det(L), computed through the Goeritz form and through Fox calculus.

    The two routes are independent; disagreement raises OracleMismatch.
    """
    p = p or wirtinger(d)
    by_goeritz = goeritz_determinant(d)
    by_fox = fox_determinant(p)
    if by_goeritz != by_fox:
        raise OracleMismatch(
            f"determinant routes disagree: Goeritz {by_goeritz}, Fox {by_fox}")
    return by_goeritz


def signature(d):
    """Gordon-Litherland signature; additive over split pieces."""
    try:
        return dg.gordon_litherland_signature(dg.goeritz(d))
    except DisconnectedDiagram as split:
        return sum(dg.gordon_litherland_signature(g) for g in split.parts)


@dataclass
class InvariantReport:
    name: str
    det: int
    sigma: int
    alexander: object          # LaurentPolynomial for knots, else None
    alexander_at_minus1: int
    n_components: int
    linking_numbers: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "name": self.name,
            "det": self.det,
            "sigma": self.sigma,
            "alex_coeffs": (None if self.alexander is None
                            else {"low": self.alexander.low,
                                  "coeffs": self.alexander.coefficient_list()}),
            "alexander_at_minus1": self.alexander_at_minus1,
            "components": self.n_components,
            "linking_numbers": {f"{a},{b}": v for (a, b), v in sorted(self.linking_numbers.items())},
            "checks": dict(self.checks),
        }


def invariants(d, name=""):
    p = wirtinger(d)
    det = determinant(d, p)
    sigma = signature(d)
    if d.n_components == 1:
        alex = knot_alexander(p)
        at_minus1 = alex(-1)
    else:
        alex = None
        at_minus1 = bareiss_det(matrix_at(alexander_matrix(p), -1)) if _is_square(p) else 0
    links = {}
    for a in range(d.n_components):
        for b in range(a + 1, d.n_components):
            links[(a, b)] = dg.linking_number(d, a, b)
    report = InvariantReport(name=name or d.source_notation, det=det, sigma=sigma,
                             alexander=alex, alexander_at_minus1=at_minus1,
                             n_components=d.n_components, linking_numbers=links)
    report.checks = congruence_checks(report)
    return report


def congruence_checks(r):
    """Pass/fail for each identity that applies; None where it does not.

    murasugi        knots: det = (-1)^(sigma/2) mod 4
    alexander_sign  knots: Delta(-1) = (-1)^(sigma/2) det, exactly
    torres_mod2     two components: det = 2 lk mod 4
    hosokawa_kinoshita  2^(l-1) divides det, and det is odd for knots
    """
    checks = {"murasugi": None, "alexander_sign": None,
              "torres_mod2": None, "hosokawa_kinoshita": None}
    l = r.n_components
    if l == 1:
        if r.sigma % 2:
            checks["murasugi"] = False
            checks["alexander_sign"] = False
        else:
            unit = (-1) ** ((r.sigma // 2) % 2)
            checks["murasugi"] = (r.det - unit) % 4 == 0
            checks["alexander_sign"] = r.alexander_at_minus1 == unit * r.det
    if l == 2:
        lk = r.linking_numbers[(0, 1)]
        checks["torres_mod2"] = (r.det - 2 * lk) % 4 == 0
    checks["hosokawa_kinoshita"] = (r.det % (2 ** (l - 1)) == 0
                                    and (l != 1 or r.det % 2 == 1))
    return checks
