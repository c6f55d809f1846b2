"""Random-instance generators shared by the unit and acceptance tests.

Random *valid* coalgebras and morphisms are built by conjugating seed
structures (grouplike, divided-power, zero-comultiplication, direct
sums) by random invertible basis changes, which preserves every
defining identity while scrambling all matrix entries.  Cochains are
unconstrained linear maps of the right shape.
"""

import random
from fractions import Fraction

from coaldef.coalgebra import (
    change_basis,
    change_basis_morphism,
    collapse_morphism,
    direct_sum,
    divided_power,
    grouplike,
    identity_morphism,
    inclusion_morphism,
    regular_bicomodule,
    zero_comultiplication,
    zero_morphism,
)
from coaldef.cohomology import Cochain, MorphismComplex
from coaldef.deformation import FormalIsomorphism, TruncatedDeformation
from coaldef.exactlinalg import QQ, Matrix, kernel_basis


def rational(rng, bound=9):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def rational_matrix(rng, rows, cols, bound=9):
    return Matrix.from_rows(QQ, [
        [rational(rng, bound) for _ in range(cols)] for _ in range(rows)])


def invertible_matrix(rng, n, bound=9):
    while True:
        m = rational_matrix(rng, n, n, bound)
        if m.inverse() is not None:
            return m


def seed_coalgebras(max_dim=3):
    pool = [grouplike(1), zero_comultiplication(1)]
    if max_dim >= 2:
        pool += [grouplike(2), divided_power(2), zero_comultiplication(2),
                 direct_sum(grouplike(1), grouplike(1))]
    if max_dim >= 3:
        pool += [grouplike(3), divided_power(3),
                 direct_sum(grouplike(1), divided_power(2))]
    return pool


def random_coalgebra(rng, max_dim=3):
    seed = rng.choice(seed_coalgebras(max_dim))
    if seed.dim == 0:
        return seed
    return change_basis(seed, invertible_matrix(rng, seed.dim))


def seed_morphisms(max_dim=3):
    pool = [identity_morphism(grouplike(1)),
            identity_morphism(zero_comultiplication(1))]
    if max_dim >= 2:
        pool += [identity_morphism(divided_power(2)),
                 identity_morphism(grouplike(2)),
                 collapse_morphism(2),
                 inclusion_morphism(grouplike(1), grouplike(1)),
                 zero_morphism(grouplike(1), divided_power(2))]
    if max_dim >= 3:
        pool += [collapse_morphism(3),
                 identity_morphism(divided_power(3)),
                 inclusion_morphism(grouplike(1), divided_power(2))]
    return pool


def random_morphism(rng, max_dim=3):
    seed = rng.choice(seed_morphisms(max_dim))
    p = invertible_matrix(rng, seed.source.dim)
    q = invertible_matrix(rng, seed.target.dim)
    return change_basis_morphism(seed, p, q)


def random_bicomodule(rng, max_dim=3):
    if rng.random() < 0.5:
        return regular_bicomodule(random_coalgebra(rng, max_dim))
    from coaldef.coalgebra import bicomodule_via
    return bicomodule_via(random_morphism(rng, max_dim))


def random_cochain(bicomodule, degree, rng, bound=9):
    d = bicomodule.over.dim
    return Cochain(bicomodule, degree,
                   rational_matrix(rng, d ** degree, bicomodule.dim, bound))


def random_morphism_cochain(comp: MorphismComplex, degree, rng, bound=9):
    f = comp.morphism
    a = rational_matrix(rng, f.source.dim ** degree, f.source.dim, bound)
    b = rational_matrix(rng, f.target.dim ** degree, f.target.dim, bound)
    if degree == 1:
        return comp.element(a, b, None, 1)
    ab = rational_matrix(rng, f.target.dim ** (degree - 1), f.source.dim, bound)
    return comp.element(a, b, ab, degree)


def random_cocycle(comp: MorphismComplex, rng, degree=2, bound=5):
    """A random element of the kernel of the degree-``degree`` differential."""
    ker = kernel_basis(comp.differential_matrix(degree))
    w = comp.zero(degree)
    for j in range(ker.dim):
        coeff = rational(rng, bound)
        if coeff:
            vec = ker.basis.submatrix_columns([j])
            w = w + comp.from_flat(degree, vec.column_entries(0)).scale(coeff)
    return w


def random_isomorphism(comp: MorphismComplex, order, rng, bound=4):
    f = comp.morphism
    higher = []
    for _ in range(order):
        a = rational_matrix(rng, f.source.dim, f.source.dim, bound)
        b = rational_matrix(rng, f.target.dim, f.target.dim, bound)
        higher.append(comp.element(a, b, None, 1))
    return FormalIsomorphism.from_higher_coefficients(f, higher, order)


def dilate_deformation(d: TruncatedDeformation, k) -> TruncatedDeformation:
    """Substitute t -> t^k: shifts every coefficient from order n to k*n."""
    comp = d.complex()
    coeffs = [d.coeffs[0]]
    for n in range(1, d.order * k + 1):
        coeffs.append(d.coefficient(n // k) if n % k == 0 else comp.zero(2))
    out = TruncatedDeformation(d.morphism, coeffs)
    out._complex = comp
    return out


def fresh_rng(seed):
    return random.Random(seed)
