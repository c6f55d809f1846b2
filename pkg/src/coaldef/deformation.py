"""Truncated formal deformations of a coalgebra morphism.

A deformation of order N of a morphism f: A -> B is a polynomial family
(comultiplication on A, comultiplication on B, morphism) with
coefficients in the degree-2 part of the deformation complex of f,
constant term the original structure maps, satisfying coassociativity
on both sides and the morphism compatibility condition coefficientwise
through order N.  This module implements:

* coefficientwise verification with located failures;
* extraction of the leading (infinitesimal) coefficient, which is
  always a 2-cocycle for a valid deformation;
* the degree-3 obstruction cochain whose cobounding is equivalent to
  extending the deformation one order further (it is always a
  3-cocycle; a violation is an internal error, never a data state);
* order-by-order extension and integration of a 2-cocycle up to a
  target order, with the canonical linear solve picking the extension;
* formal isomorphisms with truncated inversion and composition,
  transport of deformations along them, and a constructive
  trivialization (staircase) that either exhibits an equivalence with
  the trivial deformation or returns the blocking degree-2 class.

Everything is exact; truncation order is part of every object.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coalgebra import CoalgebraMorphism, InvalidStructureError
from .cohomology import Cochain, MorphismCochain, MorphismComplex
from .exactlinalg import DimensionError, ExactLinalgError, Matrix


class InternalInvariantError(ExactLinalgError):
    """A mathematically guaranteed identity failed: an implementation bug."""


class ExtensionRejected(ExactLinalgError):
    """A supplied extension coefficient does not cobound the obstruction."""


# ---------------------------------------------------------------------------
# truncated matrix power series (coefficient lists of fixed length)


def _series_mul(a, b, order):
    """Cauchy product of two truncated matrix series, truncated at ``order``."""
    out = []
    for n in range(order + 1):
        acc = a[0] @ b[n]
        for i in range(1, n + 1):
            acc = acc + a[i] @ b[n - i]
        out.append(acc)
    return out


def _series_kron(a, b, order):
    """Coefficientwise Kronecker product of two truncated series."""
    out = []
    for n in range(order + 1):
        acc = a[0].kron(b[n])
        for i in range(1, n + 1):
            acc = acc + a[i].kron(b[n - i])
        out.append(acc)
    return out


def _series_inverse(a, order):
    """Inverse of a truncated series whose constant term is the identity."""
    ident = a[0]
    inv = [ident]
    for n in range(1, order + 1):
        acc = a[1] @ inv[n - 1]
        for k in range(2, n + 1):
            acc = acc + a[k] @ inv[n - k]
        inv.append(-acc)
    return inv


# ---------------------------------------------------------------------------
# deformations


class TruncatedDeformation:
    """A deformation of a morphism, truncated at a fixed order.

    ``coeffs[n]`` is the degree-2 morphism cochain carrying the order-n
    coefficients of the two comultiplications (a_part, b_part) and of
    the morphism (ab_part); ``coeffs[0]`` is always the structure triple
    of the undeformed morphism.
    """

    __slots__ = ("morphism", "order", "coeffs", "_complex")

    def __init__(self, morphism: CoalgebraMorphism, coeffs):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise DimensionError("a deformation has at least its order-0 term")
        c0 = coeffs[0]
        if (c0.degree != 2 or c0.morphism != morphism
                or c0.a_part.matrix != morphism.source.delta
                or c0.b_part.matrix != morphism.target.delta
                or c0.ab_part.matrix != morphism.matrix):
            raise InvalidStructureError(
                "order-0 coefficient must be the structure maps of the morphism")
        for c in coeffs[1:]:
            if c.degree != 2 or c.morphism != morphism:
                raise DimensionError(
                    "deformation coefficients must be degree-2 cochains over "
                    "the same morphism")
        self.morphism = morphism
        self.order = len(coeffs) - 1
        self.coeffs = coeffs
        self._complex = None

    @classmethod
    def from_higher_coefficients(cls, morphism, higher, order=None):
        """Build from the coefficients of t^1.. (zero-padded to ``order``)."""
        higher = list(higher)
        if order is None:
            order = len(higher)
        comp = MorphismComplex(morphism)
        while len(higher) < order:
            higher.append(comp.zero(2))
        d = cls(morphism, [_structure_coefficient(comp)] + higher)
        d._complex = comp
        return d

    @classmethod
    def trivial(cls, morphism, order):
        return cls.from_higher_coefficients(morphism, [], order)

    def complex(self) -> MorphismComplex:
        if self._complex is None:
            self._complex = MorphismComplex(self.morphism)
        return self._complex

    def coefficient(self, n) -> MorphismCochain:
        return self.coeffs[n]

    def comul_a(self, n) -> Matrix:
        return self.coeffs[n].a_part.matrix

    def comul_b(self, n) -> Matrix:
        return self.coeffs[n].b_part.matrix

    def map_coeff(self, n) -> Matrix:
        return self.coeffs[n].ab_part.matrix

    def series_a(self):
        return [self.comul_a(n) for n in range(self.order + 1)]

    def series_b(self):
        return [self.comul_b(n) for n in range(self.order + 1)]

    def series_f(self):
        return [self.map_coeff(n) for n in range(self.order + 1)]

    def truncate(self, order) -> "TruncatedDeformation":
        if order > self.order:
            raise DimensionError("cannot truncate upward")
        d = TruncatedDeformation(self.morphism, self.coeffs[:order + 1])
        d._complex = self._complex
        return d

    def __eq__(self, other):
        if not isinstance(other, TruncatedDeformation):
            return NotImplemented
        return self.morphism == other.morphism and self.coeffs == other.coeffs

    def __repr__(self):
        return (f"TruncatedDeformation(order={self.order}, "
                f"over {self.morphism!r})")


def _structure_coefficient(comp: MorphismComplex) -> MorphismCochain:
    """The order-0 coefficient: both comultiplications and the morphism."""
    f = comp.morphism
    return comp.element(f.source.delta, f.target.delta, f.matrix, 2)


class FormalIsomorphism:
    """A truncated formal isomorphism: degree-1 coefficients on both sides.

    The order-0 coefficient is the identity pair, which makes every
    formal isomorphism invertible modulo t^(order+1).
    """

    __slots__ = ("morphism", "order", "coeffs", "_complex")

    def __init__(self, morphism: CoalgebraMorphism, coeffs):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise DimensionError("an isomorphism has at least its order-0 term")
        comp = MorphismComplex(morphism)
        ident = comp.element(
            Matrix.identity(morphism.field, morphism.source.dim),
            Matrix.identity(morphism.field, morphism.target.dim), None, 1)
        if coeffs[0] != ident:
            raise InvalidStructureError(
                "order-0 coefficient of a formal isomorphism must be the "
                "identity pair")
        for c in coeffs[1:]:
            if c.degree != 1 or c.morphism != morphism:
                raise DimensionError(
                    "isomorphism coefficients must be degree-1 cochains over "
                    "the same morphism")
        self.morphism = morphism
        self.order = len(coeffs) - 1
        self.coeffs = coeffs
        self._complex = comp

    @classmethod
    def from_higher_coefficients(cls, morphism, higher, order=None):
        higher = list(higher)
        if order is None:
            order = len(higher)
        comp = MorphismComplex(morphism)
        ident = comp.element(
            Matrix.identity(morphism.field, morphism.source.dim),
            Matrix.identity(morphism.field, morphism.target.dim), None, 1)
        while len(higher) < order:
            higher.append(comp.zero(1))
        return cls(morphism, [ident] + higher)

    @classmethod
    def identity(cls, morphism, order):
        return cls.from_higher_coefficients(morphism, [], order)

    def coefficient(self, n) -> MorphismCochain:
        return self.coeffs[n]

    def series_a(self):
        return [c.a_part.matrix for c in self.coeffs]

    def series_b(self):
        return [c.b_part.matrix for c in self.coeffs]

    def is_identity(self):
        return all(c.is_zero() for c in self.coeffs[1:])

    def __eq__(self, other):
        if not isinstance(other, FormalIsomorphism):
            return NotImplemented
        return self.morphism == other.morphism and self.coeffs == other.coeffs

    def __repr__(self):
        return f"FormalIsomorphism(order={self.order}, over {self.morphism!r})"


@dataclass(frozen=True)
class ObstructionClass:
    """The degree-3 obstruction cochain of an order-N deformation.

    ``h3_class`` holds its coordinates in the canonical basis of the
    degree-3 cohomology of the deformation complex; an empty tuple means
    the obstruction cobounds and the deformation extends to
    ``next_order``.
    """

    cochain: MorphismCochain
    h3_class: tuple
    next_order: int

    @property
    def is_trivial(self):
        return not self.h3_class


@dataclass(frozen=True)
class DeformationReport:
    """Outcome of verify_deformation; locates the first failing identity."""

    ok: bool
    order: int | None = None
    equation: str | None = None
    position: tuple | None = None
    message: str = "ok"

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class InfinitesimalResult:
    """Leading nonzero coefficient of a deformation, if any."""

    trivial: bool
    coefficient: MorphismCochain | None = None
    is_cocycle: bool | None = None
    generalized_order: int | None = None


@dataclass(frozen=True)
class IntegrationResult:
    """A deformation built order-by-order from a 2-cocycle.

    ``obstruction`` is None when the target order was reached; otherwise
    the deformation is the partial result and ``obstruction`` carries
    the nonzero class that stopped the integration.
    """

    deformation: TruncatedDeformation
    obstruction: ObstructionClass | None = None

    @property
    def ok(self):
        return self.obstruction is None


@dataclass(frozen=True)
class TrivializationResult:
    """Either an equivalence with the trivial deformation or the blocker."""

    ok: bool
    isomorphism: FormalIsomorphism | None = None
    blocked_order: int | None = None
    blocking_cochain: MorphismCochain | None = None
    h2_class: tuple = field(default_factory=tuple)

    def __bool__(self):
        return self.ok


# ---------------------------------------------------------------------------
# verification


def verify_deformation(d: TruncatedDeformation) -> DeformationReport:
    """Check all defining identities coefficientwise through the order.

    For every order n: coassociativity of both deformed comultiplications
    (the convolution of the coefficient lists) and the morphism condition
    equating the two ways of pushing the deformed comultiplications
    through the deformed map.  Reports the first failure.
    """
    f = d.morphism
    n_max = d.order
    sides = (
        ("coassociativity[source]", d.series_a(), f.source.dim),
        ("coassociativity[target]", d.series_b(), f.target.dim),
    )
    for label, series, dim in sides:
        ident = Matrix.identity(f.field, dim)
        krons = [(s.kron(ident), ident.kron(s)) for s in series]
        for n in range(n_max + 1):
            acc = Matrix.zeros(f.field, dim ** 3, dim)
            for i in range(n + 1):
                left, right = krons[i]
                acc = acc + (left - right) @ series[n - i]
            if not acc.is_zero():
                pos = acc.first_nonzero()
                return DeformationReport(
                    False, n, label, pos,
                    f"{label} fails at order {n}, entry {pos}")
    sa, sb, sf = d.series_a(), d.series_b(), d.series_f()
    for n in range(n_max + 1):
        acc = None
        for i in range(n + 1):
            for j in range(n - i + 1):
                k = n - i - j
                term = sf[j].kron(sf[k]) @ sa[i]
                acc = term if acc is None else acc + term
        for i in range(n + 1):
            acc = acc - sb[i] @ sf[n - i]
        if not acc.is_zero():
            pos = acc.first_nonzero()
            return DeformationReport(
                False, n, "morphism", pos,
                f"morphism condition fails at order {n}, entry {pos}")
    return DeformationReport(True)


def infinitesimal(d: TruncatedDeformation) -> InfinitesimalResult:
    """The leading nonzero coefficient and its cocycle status.

    For a valid deformation whose coefficients vanish through order l-1,
    the order-l coefficient is a 2-cocycle; ``generalized_order`` is l.
    A deformation with no nonzero coefficient is trivial to this order.
    """
    comp = d.complex()
    for n in range(1, d.order + 1):
        w = d.coefficient(n)
        if not w.is_zero():
            return InfinitesimalResult(False, w, comp.is_cocycle(w), n)
    return InfinitesimalResult(True)


# ---------------------------------------------------------------------------
# obstruction theory


def comp_bar(s: Cochain, t: Cochain) -> Cochain:
    """The degree-3 pairing (s (x) Id) o t - (Id (x) s) o t of 2-cochains.

    Both arguments live on the regular bicomodule of one coalgebra; the
    pairing of a coassociative comultiplication with itself is zero, and
    summing it over split coefficient indices yields the comultiplication
    part of the obstruction cochain.
    """
    if s.bicomodule != t.bicomodule:
        raise DimensionError("cochains live on different bicomodules")
    if s.degree != 2 or t.degree != 2:
        raise DimensionError("comp_bar pairs degree-2 cochains")
    m = s.bicomodule
    if m.psi_l != m.over.delta or m.psi_r != m.over.delta:
        raise InvalidStructureError("comp_bar requires the regular bicomodule")
    ident = Matrix.identity(m.field, m.over.dim)
    mat = s.matrix.kron(ident) @ t.matrix - ident.kron(s.matrix) @ t.matrix
    return Cochain(m, 3, mat)


def _obstruction_cochain(d: TruncatedDeformation) -> MorphismCochain:
    """The degree-3 cochain obstructing extension by one order.

    Raises InternalInvariantError if it fails to be a 3-cocycle, which
    the theory rules out for valid input.
    """
    f = d.morphism
    comp = d.complex()
    n = d.order
    ident_a = Matrix.identity(f.field, f.source.dim)
    ident_b = Matrix.identity(f.field, f.target.dim)

    def comp_sum(series, ident, dim):
        acc = Matrix.zeros(f.field, dim ** 3, dim)
        for i in range(1, n + 1):
            s = series[i]
            t = series[n + 1 - i]
            acc = acc + (s.kron(ident) - ident.kron(s)) @ t
        return acc

    ob_a = comp_sum(d.series_a(), ident_a, f.source.dim)
    ob_b = comp_sum(d.series_b(), ident_b, f.target.dim)

    sa, sb, sf = d.series_a(), d.series_b(), d.series_f()
    ob_f = Matrix.zeros(f.field, f.target.dim ** 2, f.source.dim)
    for i in range(n + 1):
        for j in range(n + 1 - i + 1):
            k = n + 1 - i - j
            if k > n or j > n:
                continue
            ob_f = ob_f + sf[j].kron(sf[k]) @ sa[i]
    for i in range(1, n + 1):
        ob_f = ob_f - sb[n + 1 - i] @ sf[i]

    ob = comp.element(ob_a, ob_b, ob_f, 3)
    if not comp.is_cocycle(ob):
        raise InternalInvariantError(
            "obstruction cochain is not a 3-cocycle; this indicates a bug, "
            "not a property of the input")
    return ob


def obstruction(d: TruncatedDeformation) -> ObstructionClass:
    """Obstruction cochain of a valid deformation together with its class."""
    ob = _obstruction_cochain(d)
    comp = d.complex()
    if comp.is_coboundary(ob) is not None:
        coords = ()
    else:
        coords = tuple(comp.class_coordinates(ob))
    return ObstructionClass(ob, coords, d.order + 1)


def extend(d: TruncatedDeformation, w: MorphismCochain | None = None):
    """Extend a deformation by one order.

    With ``w`` supplied, accept it iff its coboundary equals the
    obstruction cochain exactly (raising ExtensionRejected otherwise).
    Without it, solve for the canonical cobounding coefficient; if none
    exists return the nonzero ObstructionClass instead of a deformation.
    """
    comp = d.complex()
    ob = _obstruction_cochain(d)
    if w is not None:
        if w.degree != 2 or w.morphism != d.morphism:
            raise DimensionError("extension coefficient must be a degree-2 "
                                 "cochain over the same morphism")
        diff = comp.differential(w) - ob
        for part_name in ("a_part", "b_part", "ab_part"):
            part = getattr(diff, part_name)
            pos = part.matrix.first_nonzero()
            if pos is not None:
                raise ExtensionRejected(
                    f"coboundary of the supplied coefficient differs from the "
                    f"obstruction in component {part_name} at entry {pos} "
                    f"by {part.matrix[pos]}")
    else:
        w = comp.is_coboundary(ob)
        if w is None:
            return ObstructionClass(ob, tuple(comp.class_coordinates(ob)),
                                    d.order + 1)
    out = TruncatedDeformation(d.morphism, d.coeffs + (w,))
    out._complex = comp
    return out


def integrate(w: MorphismCochain, target_order) -> IntegrationResult:
    """Integrate a 2-cocycle to a deformation of the requested order.

    Starts from the first-order deformation with coefficient ``w`` and
    repeatedly extends with canonical solves.  Stops early with the
    blocking class if an obstruction fails to cobound.
    """
    if target_order < 1:
        raise DimensionError("target order must be >= 1")
    if w.degree != 2:
        raise DimensionError("only degree-2 cochains integrate to deformations")
    d = TruncatedDeformation.from_higher_coefficients(w.morphism, [w])
    comp = d.complex()
    dw = comp.differential(w)
    if not dw.is_zero():
        for part_name in ("a_part", "b_part", "ab_part"):
            pos = getattr(dw, part_name).matrix.first_nonzero()
            if pos is not None:
                raise InvalidStructureError(
                    f"not an infinitesimal candidate: coboundary is nonzero "
                    f"in component {part_name} at entry {pos}")
    while d.order < target_order:
        result = extend(d)
        if isinstance(result, ObstructionClass):
            return IntegrationResult(d, result)
        d = result
    return IntegrationResult(d, None)


# ---------------------------------------------------------------------------
# equivalence


def invert_formal(p: FormalIsomorphism) -> FormalIsomorphism:
    """Componentwise truncated inverse; composing with p gives the identity
    modulo t^(order+1)."""
    inv_a = _series_inverse(p.series_a(), p.order)
    inv_b = _series_inverse(p.series_b(), p.order)
    return _isomorphism_from_series(p.morphism, inv_a, inv_b, p.order)


def compose_isomorphisms(outer: FormalIsomorphism,
                         inner: FormalIsomorphism) -> FormalIsomorphism:
    """The isomorphism acting as ``outer`` after ``inner``."""
    if outer.morphism != inner.morphism or outer.order != inner.order:
        raise DimensionError("isomorphism mismatch")
    n = outer.order
    series_a = _series_mul(outer.series_a(), inner.series_a(), n)
    series_b = _series_mul(outer.series_b(), inner.series_b(), n)
    return _isomorphism_from_series(outer.morphism, series_a, series_b, n)


def _isomorphism_from_series(f, series_a, series_b, order):
    comp = MorphismComplex(f)
    higher = [comp.element(series_a[i], series_b[i], None, 1)
              for i in range(1, order + 1)]
    return FormalIsomorphism.from_higher_coefficients(f, higher, order)


def apply_equivalence(p: FormalIsomorphism,
                      d: TruncatedDeformation) -> TruncatedDeformation:
    """Transport a deformation along a formal isomorphism.

    Both comultiplication series are conjugated by the corresponding
    component of p (tensor square on the left, truncated inverse on the
    right); the morphism series is composed with the target component on
    the left and the inverse source component on the right.  The result
    is truncated at the common order.
    """
    if p.morphism != d.morphism:
        raise DimensionError("isomorphism and deformation live over "
                             "different morphisms")
    if p.order != d.order:
        raise DimensionError(
            f"order mismatch: isomorphism has order {p.order}, "
            f"deformation has order {d.order}")
    n = d.order
    phi_a, phi_b = p.series_a(), p.series_b()
    inv_a = _series_inverse(phi_a, n)
    inv_b = _series_inverse(phi_b, n)
    new_a = _series_mul(_series_kron(phi_a, phi_a, n),
                        _series_mul(d.series_a(), inv_a, n), n)
    new_b = _series_mul(_series_kron(phi_b, phi_b, n),
                        _series_mul(d.series_b(), inv_b, n), n)
    new_f = _series_mul(phi_b, _series_mul(d.series_f(), inv_a, n), n)
    comp = d.complex()
    if (new_a[0] != d.comul_a(0) or new_b[0] != d.comul_b(0)
            or new_f[0] != d.map_coeff(0)):
        raise InternalInvariantError(
            "transport moved the order-0 structure maps")
    higher = [comp.element(new_a[i], new_b[i], new_f[i], 2)
              for i in range(1, n + 1)]
    out = TruncatedDeformation.from_higher_coefficients(d.morphism, higher, n)
    out._complex = comp
    return out


def trivialize(d: TruncatedDeformation) -> TrivializationResult:
    """Find a formal isomorphism carrying ``d`` to the trivial deformation.

    Staircase construction: repeatedly cobound the leading nonzero
    coefficient w at order l and transport by (identity - preimage * t^l),
    which clears order l without touching lower orders; the composite of
    the steps is returned.  If some leading coefficient is a cocycle but
    not a coboundary, its degree-2 class blocks and is reported.
    """
    comp = d.complex()
    current = d
    iso = FormalIsomorphism.identity(d.morphism, d.order)
    while True:
        lead = infinitesimal(current)
        if lead.trivial:
            return TrivializationResult(True, iso)
        l = lead.generalized_order
        w = lead.coefficient
        if not lead.is_cocycle:
            raise InternalInvariantError(
                "leading coefficient of a valid deformation must be a "
                "2-cocycle")
        chi = comp.is_coboundary(w)
        if chi is None:
            return TrivializationResult(
                False, None, l, w, tuple(comp.class_coordinates(w)))
        step_higher = [comp.zero(1)] * (l - 1) + [-chi]
        step = FormalIsomorphism.from_higher_coefficients(
            d.morphism, step_higher, d.order)
        current = apply_equivalence(step, current)
        for i in range(1, l + 1):
            if not current.coefficient(i).is_zero():
                raise InternalInvariantError(
                    "staircase step failed to clear its order")
        iso = compose_isomorphisms(step, iso)
