"""Cochain complexes and their cohomology.

Two complexes are implemented:

* the Hochschild coalgebra complex of a bicomodule M over a coalgebra C,
  with n-cochains the linear maps M -> C^(x)n (the degree-0 module is
  zero by convention) and the usual three-part coboundary delta_c;
* the deformation complex of a coalgebra morphism f: A -> B, whose
  degree-n part is a triple (a_part, b_part, ab_part) of cochains on A,
  on B, and a degree-(n-1) mixed cochain A -> B^(x)(n-1), with
  coboundary d_c combining the two delta_c's with the comparison term
  b_part o f - f^(x)n o a_part.

Both complexes expose the same surface: differentials in operator and in
matrix form, cocycle/coboundary predicates with canonical cobounding
solutions, and cohomology reports with quotient representatives.
Cochains flatten to coordinate vectors row-major; morphism cochains
concatenate their (a, b, ab) blocks in that order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coalgebra import (
    Bicomodule,
    CoalgebraMorphism,
    InvalidStructureError,
    bicomodule_via,
    middle_insertion,
    regular_bicomodule,
    tensor_power_map,
)
from .exactlinalg import (
    DimensionError,
    Matrix,
    image_basis,
    kernel_basis,
    quotient_data,
    solve,
)


class Cochain:
    """A degree-n cochain on a bicomodule: a matrix M -> C^(x)n.

    Shape is (d^n, dim M) with d the coalgebra dimension; degree 0 is
    the zero module, represented by an identically zero (1, dim M)
    matrix with an empty coordinate vector.
    """

    __slots__ = ("bicomodule", "degree", "matrix")

    def __init__(self, bicomodule: Bicomodule, degree, matrix: Matrix):
        d = bicomodule.over.dim
        if matrix.shape != (d ** degree, bicomodule.dim):
            raise DimensionError(
                f"degree-{degree} cochain must be {d ** degree}x{bicomodule.dim}, "
                f"got {matrix.shape}")
        if degree == 0 and not matrix.is_zero():
            raise DimensionError("the degree-0 cochain module is zero")
        self.bicomodule = bicomodule
        self.degree = degree
        self.matrix = matrix

    @classmethod
    def zero(cls, bicomodule, degree):
        d = bicomodule.over.dim
        return cls(bicomodule, degree,
                   Matrix.zeros(bicomodule.field, d ** degree, bicomodule.dim))

    def __add__(self, other):
        self._check(other)
        return Cochain(self.bicomodule, self.degree, self.matrix + other.matrix)

    def __sub__(self, other):
        self._check(other)
        return Cochain(self.bicomodule, self.degree, self.matrix - other.matrix)

    def __neg__(self):
        return Cochain(self.bicomodule, self.degree, -self.matrix)

    def scale(self, s):
        return Cochain(self.bicomodule, self.degree, self.matrix.scale(s))

    def _check(self, other):
        if self.bicomodule != other.bicomodule or self.degree != other.degree:
            raise DimensionError("cochain mismatch")

    def is_zero(self):
        return self.matrix.is_zero()

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.degree == other.degree
                and self.bicomodule == other.bicomodule
                and self.matrix == other.matrix)

    def __repr__(self):
        return f"Cochain(degree={self.degree}, on {self.bicomodule!r})"


class MorphismCochain:
    """A degree-n element of the deformation complex of a morphism f.

    Components: ``a_part`` in degree n on the source coalgebra (regular
    bicomodule), ``b_part`` in degree n on the target, ``ab_part`` in
    degree n-1 on the source viewed over the target via f.  Degree 1 has
    a zero degree-0 ``ab_part``; the degree-0 element is the zero triple
    (used only as the canonical preimage of zero).
    """

    __slots__ = ("morphism", "degree", "a_part", "b_part", "ab_part")

    def __init__(self, morphism: CoalgebraMorphism, degree,
                 a_part: Cochain, b_part: Cochain, ab_part: Cochain | None):
        if degree < 0:
            raise DimensionError("degree must be >= 0")
        if a_part.degree != degree or b_part.degree != degree:
            raise DimensionError("component degrees do not match")
        if degree == 0:
            if ab_part is not None:
                raise DimensionError("degree-0 element has no mixed component")
        elif ab_part is None or ab_part.degree != degree - 1:
            raise DimensionError("mixed component must have degree n-1")
        self.morphism = morphism
        self.degree = degree
        self.a_part = a_part
        self.b_part = b_part
        self.ab_part = ab_part

    def parts(self):
        if self.ab_part is None:
            return self.a_part, self.b_part
        return self.a_part, self.b_part, self.ab_part

    def __add__(self, other):
        self._check(other)
        ab = None if self.ab_part is None else self.ab_part + other.ab_part
        return MorphismCochain(self.morphism, self.degree,
                               self.a_part + other.a_part,
                               self.b_part + other.b_part, ab)

    def __sub__(self, other):
        self._check(other)
        ab = None if self.ab_part is None else self.ab_part - other.ab_part
        return MorphismCochain(self.morphism, self.degree,
                               self.a_part - other.a_part,
                               self.b_part - other.b_part, ab)

    def __neg__(self):
        ab = None if self.ab_part is None else -self.ab_part
        return MorphismCochain(self.morphism, self.degree,
                               -self.a_part, -self.b_part, ab)

    def scale(self, s):
        ab = None if self.ab_part is None else self.ab_part.scale(s)
        return MorphismCochain(self.morphism, self.degree,
                               self.a_part.scale(s), self.b_part.scale(s), ab)

    def _check(self, other):
        if self.morphism != other.morphism or self.degree != other.degree:
            raise DimensionError("morphism cochain mismatch")

    def is_zero(self):
        return all(p.is_zero() for p in self.parts())

    def __eq__(self, other):
        if not isinstance(other, MorphismCochain):
            return NotImplemented
        return (self.degree == other.degree and self.morphism == other.morphism
                and self.a_part == other.a_part and self.b_part == other.b_part
                and self.ab_part == other.ab_part)

    def __repr__(self):
        return f"MorphismCochain(degree={self.degree}, over {self.morphism!r})"


@dataclass(frozen=True)
class CohomologyReport:
    """Dimensions and canonical representatives of one cohomology degree."""

    degree: int
    cocycle_dim: int
    coboundary_dim: int
    h_dim: int
    representatives: tuple


def _flatten_matrix(m: Matrix):
    """Row-major coordinate list of a cochain matrix."""
    return [m[i, j] for i in range(m.rows) for j in range(m.cols)]


class _ComplexBase:
    """Shared machinery: differentials in matrix form and cohomology."""

    def __init__(self):
        self._dmat_cache = {}

    # subclasses: field, cochain_dim(n), zero(n), from_flat(n, entries),
    # differential(w), element degree accessor via w.degree

    def flatten(self, w) -> Matrix:
        """Coordinate column vector of a cochain, in the fixed block order."""
        raise NotImplementedError

    def differential_matrix(self, n) -> Matrix:
        """The matrix D_n of the degree-n differential on coordinate vectors.

        Columns are indexed by the standard cochain basis in flattening
        order; D_0 has zero columns since the degree-0 module is zero.
        """
        if n not in self._dmat_cache:
            src = self.cochain_dim(n)
            tgt = self.cochain_dim(n + 1)
            if src and tgt:
                cols = []
                for idx in range(src):
                    entries = [0] * src
                    entries[idx] = 1
                    image = self.differential(self.from_flat(n, entries))
                    cols.append(self.flatten(image).column_entries(0))
                rows = [[cols[j][i] for j in range(src)] for i in range(tgt)]
                mat = Matrix.from_rows(self.field, rows)
            else:
                mat = Matrix.zeros(self.field, tgt, src)
            self._dmat_cache[n] = mat
        return self._dmat_cache[n]

    def is_cocycle(self, w) -> bool:
        return self.differential(w).is_zero()

    def is_coboundary(self, w):
        """A canonical preimage under the differential, or None.

        The preimage is chosen by the deterministic linear solve (free
        variables zero), so repeated runs agree.
        """
        n = w.degree
        x = solve(self.differential_matrix(n - 1), self.flatten(w))
        if x is None:
            return None
        return self.from_flat(n - 1, x.column_entries(0))

    def cohomology(self, n) -> CohomologyReport:
        """Kernel-modulo-image data of the complex in degree n >= 1."""
        if n < 1:
            raise DimensionError("cohomology is exposed for degrees >= 1 only")
        ker = kernel_basis(self.differential_matrix(n))
        im = image_basis(self.differential_matrix(n - 1))
        h_dim, reps = quotient_data(ker, im)
        cochain_reps = tuple(
            self.from_flat(n, v.column_entries(0)) for v in reps
        )
        return CohomologyReport(n, ker.dim, im.dim, h_dim, cochain_reps)

    def class_coordinates(self, w):
        """Coordinates of the class of a cocycle w in the canonical H^n basis.

        Empty list iff w is a coboundary.  Raises if w is not a cocycle.
        """
        n = w.degree
        ker = kernel_basis(self.differential_matrix(n))
        im = image_basis(self.differential_matrix(n - 1))
        h_dim, reps = quotient_data(ker, im)
        if h_dim == 0:
            if self.is_coboundary(w) is None:
                raise InvalidStructureError("not a cocycle")
            return []
        basis = im.basis
        for v in reps:
            basis = basis.hstack(v)
        x = solve(basis, self.flatten(w))
        if x is None:
            raise InvalidStructureError("not a cocycle")
        coords = x.column_entries(0)[im.dim:]
        if not any(coords):
            return []
        return coords


class HochschildComplex(_ComplexBase):
    """The Hochschild coalgebra complex of a bicomodule."""

    def __init__(self, bicomodule: Bicomodule):
        super().__init__()
        self.bicomodule = bicomodule
        self._insertions = {}

    @property
    def field(self):
        return self.bicomodule.field

    def cochain_dim(self, n):
        if n <= 0:
            return 0
        return self.bicomodule.over.dim ** n * self.bicomodule.dim

    def zero(self, n):
        return Cochain.zero(self.bicomodule, n)

    def from_flat(self, n, entries):
        d = self.bicomodule.over.dim
        m = self.bicomodule.dim
        if n <= 0:
            return Cochain.zero(self.bicomodule, 0)
        rows = [entries[i * m:(i + 1) * m] for i in range(d ** n)]
        return Cochain(self.bicomodule, n, Matrix.from_rows(self.field, rows))

    def flatten(self, w: Cochain) -> Matrix:
        if w.degree == 0:
            return Matrix.zeros(self.field, 0, 1)
        return Matrix.column(self.field, _flatten_matrix(w.matrix))

    def _insertion(self, n, i):
        key = (n, i)
        if key not in self._insertions:
            self._insertions[key] = middle_insertion(self.bicomodule.over, n, i)
        return self._insertions[key]

    def differential(self, w: Cochain) -> Cochain:
        """The coboundary delta_c.

        For a degree-n cochain s this is
        (Id (x) s) o psi_l
        + sum over i of (-1)^i (Id^(i-1) (x) delta (x) Id^(n-i)) o s
        + (-1)^(n+1) (s (x) Id) o psi_r,
        landing in degree n+1.  Degree-0 input gives the zero 1-cochain.
        """
        m = self.bicomodule
        n = w.degree
        if n == 0:
            return Cochain.zero(m, 1)
        ident = Matrix.identity(self.field, m.over.dim)
        total = ident.kron(w.matrix) @ m.psi_l
        for i in range(1, n + 1):
            term = self._insertion(n, i) @ w.matrix
            total = total - term if i % 2 else total + term
        last = w.matrix.kron(ident) @ m.psi_r
        total = total + last if n % 2 else total - last
        return Cochain(m, n + 1, total)


class MorphismComplex(_ComplexBase):
    """The deformation complex of a coalgebra morphism.

    ``validate=False`` skips the morphism-compatibility check and builds
    the mixed bicomodule from the raw formulas; it exists so that
    checking tools can hold cochains over structures they are about to
    report as broken.
    """

    def __init__(self, f: CoalgebraMorphism, validate=True):
        super().__init__()
        self.morphism = f
        self.on_source = HochschildComplex(regular_bicomodule(f.source))
        self.on_target = HochschildComplex(regular_bicomodule(f.target))
        if validate:
            via = bicomodule_via(f)
        else:
            ident = Matrix.identity(f.field, f.source.dim)
            via = Bicomodule(f.target, f.source.dim,
                             f.matrix.kron(ident) @ f.source.delta,
                             ident.kron(f.matrix) @ f.source.delta)
        self.mixed = HochschildComplex(via)
        self._powers = {}

    @property
    def field(self):
        return self.morphism.field

    def _power(self, n):
        if n not in self._powers:
            self._powers[n] = tensor_power_map(self.morphism.matrix, n)
        return self._powers[n]

    def cochain_dim(self, n):
        if n <= 0:
            return 0
        return (self.on_source.cochain_dim(n) + self.on_target.cochain_dim(n)
                + self.mixed.cochain_dim(n - 1))

    def zero(self, n):
        ab = None if n == 0 else self.mixed.zero(n - 1)
        return MorphismCochain(self.morphism, n,
                               self.on_source.zero(n), self.on_target.zero(n), ab)

    def element(self, a_matrix: Matrix, b_matrix: Matrix,
                ab_matrix: Matrix | None, degree) -> MorphismCochain:
        """Assemble a morphism cochain from raw component matrices."""
        a = Cochain(self.on_source.bicomodule, degree, a_matrix)
        b = Cochain(self.on_target.bicomodule, degree, b_matrix)
        if degree == 1:
            ab = self.mixed.zero(0)
            if ab_matrix is not None and not ab_matrix.is_zero():
                raise DimensionError("degree-1 mixed component must be zero")
        else:
            ab = Cochain(self.mixed.bicomodule, degree - 1, ab_matrix)
        return MorphismCochain(self.morphism, degree, a, b, ab)

    def from_flat(self, n, entries):
        if n <= 0:
            return MorphismCochain(self.morphism, 0, self.on_source.zero(0),
                                   self.on_target.zero(0), None)
        na = self.on_source.cochain_dim(n)
        nb = self.on_target.cochain_dim(n)
        a = self.on_source.from_flat(n, entries[:na])
        b = self.on_target.from_flat(n, entries[na:na + nb])
        ab = self.mixed.from_flat(n - 1, entries[na + nb:])
        return MorphismCochain(self.morphism, n, a, b, ab)

    def flatten(self, w: MorphismCochain) -> Matrix:
        if w.degree == 0:
            return Matrix.zeros(self.field, 0, 1)
        entries = _flatten_matrix(w.a_part.matrix)
        entries.extend(_flatten_matrix(w.b_part.matrix))
        if w.degree >= 2:
            entries.extend(_flatten_matrix(w.ab_part.matrix))
        return Matrix.column(self.field, entries)

    def differential(self, w: MorphismCochain) -> MorphismCochain:
        """The coboundary d_c of the deformation complex.

        Componentwise: (delta_c a_part, delta_c b_part,
        b_part o f - f^(x)n o a_part - delta_c ab_part).  The sign of the
        two comparison terms is what makes first-order deformation
        coefficients cocycles.
        """
        n = w.degree
        f = self.morphism
        if n == 0:
            return self.zero(1)
        da = self.on_source.differential(w.a_part)
        db = self.on_target.differential(w.b_part)
        mixed_mat = (w.b_part.matrix @ f.matrix
                     - self._power(n) @ w.a_part.matrix
                     - self.mixed.differential(w.ab_part).matrix)
        ab = Cochain(self.mixed.bicomodule, n, mixed_mat)
        return MorphismCochain(f, n + 1, da, db, ab)


# ---------------------------------------------------------------------------
# operation-style entry points


def hochschild_complex(bicomodule: Bicomodule) -> HochschildComplex:
    return HochschildComplex(bicomodule)


def morphism_complex(f: CoalgebraMorphism) -> MorphismComplex:
    return MorphismComplex(f)


def delta_c(w: Cochain) -> Cochain:
    """Coboundary of a Hochschild cochain (carries its bicomodule)."""
    return HochschildComplex(w.bicomodule).differential(w)


def d_c(w: MorphismCochain) -> MorphismCochain:
    """Coboundary of a deformation-complex cochain."""
    return MorphismComplex(w.morphism).differential(w)


def differential_matrix(complex_, n) -> Matrix:
    return complex_.differential_matrix(n)


def cohomology(complex_, n) -> CohomologyReport:
    return complex_.cohomology(n)


def is_cocycle(complex_, w) -> bool:
    return complex_.is_cocycle(w)


def is_coboundary(complex_, w):
    return complex_.is_coboundary(w)
