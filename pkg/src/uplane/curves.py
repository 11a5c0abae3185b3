"""Weierstrass curves y^2 = 4x^3 - g2 x - g3 and polynomial families over the u-plane.

A family promotes g2, g3 to polynomials in the base coordinate u (degrees at
most 2 and 3), making the discriminant a polynomial of degree nf + 2 for a
valid flavor count nf.  The second chart on the base is v with u = -1/v, in
which g2, g3 and the discriminant pick up weights 4, 6 and 12.
"""

import json
from dataclasses import dataclass, field

from .errors import BadNf, DegreeMismatch, SchemaError, SingularCurve

_ZERO = (0j,)


@dataclass(frozen=True)
class ComplexPoly:
    """Dense complex polynomial, coefficients ascending in degree.

    The trailing stored coefficient is nonzero unless the polynomial is
    identically zero.  Evaluation uses Horner's rule in a fixed descending
    order so results are bit-reproducible.
    """

    coeffs: tuple = _ZERO

    @staticmethod
    def of(seq) -> "ComplexPoly":
        c = [complex(x) for x in seq]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if not c:
            c = [0j]
        return ComplexPoly(tuple(c))

    @property
    def degree(self) -> int:
        """Degree of the stored polynomial; -1 for the zero polynomial."""
        if len(self.coeffs) == 1 and self.coeffs[0] == 0:
            return -1
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.degree < 0

    def __call__(self, u: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * u + c
        return acc

    def __add__(self, other: "ComplexPoly") -> "ComplexPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0j] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0j] * (n - len(other.coeffs))
        return ComplexPoly.of([x + y for x, y in zip(a, b)])

    def __sub__(self, other: "ComplexPoly") -> "ComplexPoly":
        return self + (other * -1.0)

    def __mul__(self, other):
        if isinstance(other, ComplexPoly):
            out = [0j] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return ComplexPoly.of(out)
        return ComplexPoly.of([complex(other) * c for c in self.coeffs])

    __rmul__ = __mul__

    def derivative(self) -> "ComplexPoly":
        if len(self.coeffs) == 1:
            return ComplexPoly.of([0.0])
        return ComplexPoly.of([k * c for k, c in enumerate(self.coeffs)][1:])

    def taylor_at(self, u0: complex) -> tuple:
        """Coefficients of p(u0 + t) in t, by repeated synthetic division."""
        work = list(self.coeffs)
        out = []
        for _ in range(len(self.coeffs)):
            rem = 0j
            for c in reversed(work):
                rem = rem * u0 + c
            out.append(rem)
            # divide by (u - u0): synthetic division, quotient replaces work
            quo = []
            acc = 0j
            for c in reversed(work):
                acc = acc * u0 + c
                quo.append(acc)
            work = list(reversed(quo[:-1]))
            if not work:
                break
        return tuple(out)

    def order_at(self, u0: complex, rel_tol: float = 1e-8) -> int:
        """Vanishing order at u0: leading Taylor coefficients below tolerance.

        The tolerance is relative to the largest Taylor coefficient, so the
        answer is scale-invariant.  Returns len(coeffs) for the zero
        polynomial (an effectively infinite order).
        """
        if self.is_zero:
            return ORDER_INFINITE
        tay = self.taylor_at(u0)
        scale = max(abs(c) for c in tay)
        if scale == 0.0:
            return ORDER_INFINITE
        for k, c in enumerate(tay):
            if abs(c) > rel_tol * scale:
                return k
        return ORDER_INFINITE

    def order_at_zero_exact(self) -> int:
        """Vanishing order at 0 from exactly-zero stored coefficients.

        Meant for chart-change output whose zero coefficients are exact by
        construction (pure reindexing, no arithmetic).
        """
        if self.is_zero:
            return ORDER_INFINITE
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        return ORDER_INFINITE


ORDER_INFINITE = 10**6  # stand-in vanishing order of the zero polynomial


@dataclass(frozen=True)
class WeierstrassCurve:
    """A single cubic y^2 = 4x^3 - g2 x - g3."""

    g2: complex
    g3: complex

    @property
    def is_smooth(self) -> bool:
        return discriminant(self) != 0

    @property
    def is_cusp(self) -> bool:
        return self.g2 == 0 and self.g3 == 0


def discriminant(curve: WeierstrassCurve) -> complex:
    """g2^3 - 27 g3^2; zero exactly at nodes (g2,g3 != 0) and cusps (g2=g3=0)."""
    return curve.g2**3 - 27.0 * curve.g3**2


def j_invariant(curve: WeierstrassCurve) -> complex:
    """1728 g2^3 / (g2^3 - 27 g3^2)."""
    d = discriminant(curve)
    if d == 0:
        raise SingularCurve(f"discriminant vanishes for g2={curve.g2}, g3={curve.g3}")
    return 1728.0 * curve.g2**3 / d


@dataclass(frozen=True)
class CurveFamily:
    """Polynomial Weierstrass family over the u-plane.

    Degree bounds (deg g2 <= 2, deg g3 <= 3) and the flavor range are checked
    at construction; the discriminant-degree contract deg = nf + 2 is checked
    by discriminant_poly / the JSON loader, so invalid family files fail at
    ingestion rather than deep inside a computation.
    """

    g2_poly: ComplexPoly
    g3_poly: ComplexPoly
    nf: int
    name: str = ""
    masses: tuple = field(default=None)

    def __post_init__(self):
        if not 0 <= self.nf <= 4:
            raise BadNf(f"nf must be in 0..4, got {self.nf}")
        if self.g2_poly.degree > 2:
            raise DegreeMismatch(f"deg g2 = {self.g2_poly.degree} > 2")
        if self.g3_poly.degree > 3:
            raise DegreeMismatch(f"deg g3 = {self.g3_poly.degree} > 3")

    def curve_at(self, u: complex) -> WeierstrassCurve:
        return WeierstrassCurve(self.g2_poly(u), self.g3_poly(u))

    def delta_at(self, u: complex) -> complex:
        return self.curve_at(u).g2 ** 3 - 27.0 * self.curve_at(u).g3 ** 2


def expand_discriminant(family: CurveFamily) -> ComplexPoly:
    """g2^3 - 27 g3^2 expanded, with cancellation dust removed.

    Valid families rely on the top coefficients of g2^3 and 27 g3^2
    cancelling; in floating point that cancellation leaves residue of order
    eps * scale, so leading coefficients below 1e-12 of the coefficient scale
    are trimmed.  If every coefficient is below that threshold relative to
    the inputs, the discriminant is identically zero and the zero polynomial
    is returned.
    """
    g2, g3 = family.g2_poly, family.g3_poly
    d = g2 * g2 * g2 - 27.0 * (g3 * g3)
    in_scale = sum(abs(c) for c in g2.coeffs) ** 3 + 27.0 * sum(abs(c) for c in g3.coeffs) ** 2
    coeffs = list(d.coeffs)
    if max(abs(c) for c in coeffs) <= 1e-12 * in_scale:
        return ComplexPoly.of([0.0])
    scale = max(abs(c) for c in coeffs)
    while len(coeffs) > 1 and abs(coeffs[-1]) <= 1e-12 * scale:
        coeffs.pop()
    return ComplexPoly.of(coeffs)


def discriminant_poly(family: CurveFamily) -> ComplexPoly:
    """Coefficient-level expansion of g2^3 - 27 g3^2.

    Raises DegreeMismatch unless the degree equals nf + 2, which is the
    ingestion-level validity test for a family file.
    """
    d = expand_discriminant(family)
    if d.degree != family.nf + 2:
        raise DegreeMismatch(
            f"deg(discriminant) = {d.degree}, expected nf + 2 = {family.nf + 2}"
        )
    return d


def poly_to_v_chart(p: ComplexPoly, weight: int) -> ComplexPoly:
    """v^weight * p(-1/v) as a polynomial in v (requires deg p <= weight).

    Pure reindexing with sign flips: the coefficient of v^(weight-k) is
    (-1)^k c_k, so structurally-zero coefficients stay exactly zero.
    """
    if p.degree > weight:
        raise DegreeMismatch(f"deg {p.degree} exceeds chart weight {weight}")
    out = [0j] * (weight + 1)
    for k, c in enumerate(p.coeffs):
        out[weight - k] = c if k % 2 == 0 else -c
    # do not trim: exact zero structure at low degrees carries the order at v=0
    return ComplexPoly(tuple(out))


@dataclass(frozen=True)
class VChartData:
    """The family seen from the chart v = -1/u: weights 4, 6 and 12."""

    g2_v: ComplexPoly
    g3_v: ComplexPoly
    delta_v: ComplexPoly
    nf: int

    @property
    def ord_delta_at_zero(self) -> int:
        return self.delta_v.order_at_zero_exact()


def to_v_chart(family: CurveFamily) -> VChartData:
    """Transport g2, g3 and the discriminant to the chart at infinity.

    ord_{v=0}(delta_v) = 12 - deg_u(delta) = 10 - nf for valid families.
    """
    g2v = poly_to_v_chart(family.g2_poly, 4)
    g3v = poly_to_v_chart(family.g3_poly, 6)
    dv = poly_to_v_chart(expand_discriminant(family), 12)
    return VChartData(g2_v=g2v, g3_v=g3v, delta_v=dv, nf=family.nf)


# ---------------------------------------------------------------------------
# Family JSON schema:
#   { "name": str, "nf": int, "g2": [[re,im],...], "g3": [[re,im],...],
#     "masses": [[re,im],...] (optional) }
# Coefficients ascending in u.
# ---------------------------------------------------------------------------

def _require(d: dict, key: str):
    if key not in d:
        raise SchemaError(f"missing required field '{key}'")
    return d[key]


def _complex_list(val, key: str):
    if not isinstance(val, list):
        raise SchemaError(f"field '{key}' must be a list of [re, im] pairs")
    out = []
    for item in val:
        if (
            not isinstance(item, (list, tuple))
            or len(item) != 2
            or not all(isinstance(x, (int, float)) for x in item)
        ):
            raise SchemaError(f"field '{key}' must contain [re, im] number pairs")
        out.append(complex(item[0], item[1]))
    if not out:
        raise SchemaError(f"field '{key}' must be non-empty")
    return out


def family_from_dict(d: dict) -> CurveFamily:
    if not isinstance(d, dict):
        raise SchemaError("family file must contain a JSON object")
    name = _require(d, "name")
    if not isinstance(name, str):
        raise SchemaError("field 'name' must be a string")
    nf = _require(d, "nf")
    if not isinstance(nf, int) or isinstance(nf, bool):
        raise SchemaError("field 'nf' must be an integer")
    g2 = _complex_list(_require(d, "g2"), "g2")
    g3 = _complex_list(_require(d, "g3"), "g3")
    masses = None
    if "masses" in d and d["masses"] is not None:
        masses = tuple(_complex_list(d["masses"], "masses"))
    try:
        fam = CurveFamily(
            g2_poly=ComplexPoly.of(g2),
            g3_poly=ComplexPoly.of(g3),
            nf=nf,
            name=name,
            masses=masses,
        )
        discriminant_poly(fam)  # enforce deg = nf + 2 at ingestion
    except (BadNf, DegreeMismatch) as exc:
        raise SchemaError(str(exc)) from exc
    return fam


def family_to_dict(family: CurveFamily) -> dict:
    d = {
        "name": family.name,
        "nf": family.nf,
        "g2": [[c.real, c.imag] for c in family.g2_poly.coeffs],
        "g3": [[c.real, c.imag] for c in family.g3_poly.coeffs],
    }
    if family.masses is not None:
        d["masses"] = [[c.real, c.imag] for c in family.masses]
    return d


def load_family(path: str) -> CurveFamily:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read family file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON in family file: {exc}") from exc
    return family_from_dict(data)
