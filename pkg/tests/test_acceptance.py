"""Acceptance suite: one test per criterion, each printing a PASS line.

Randomized criteria use fixed seeds, so the suite is deterministic.  All
assertions are exact equalities; there are no tolerances anywhere.
"""

import time

import pytest
from click.testing import CliRunner

from coaldef.cli import main as cli_main
from coaldef.coalgebra import (
    collapse_morphism,
    divided_power,
    grouplike,
    identity_morphism,
    inclusion_morphism,
    regular_bicomodule,
    zero_comultiplication,
)
from coaldef.cohomology import HochschildComplex, MorphismComplex
from coaldef.deformation import (
    ObstructionClass,
    TruncatedDeformation,
    apply_equivalence,
    extend,
    infinitesimal,
    integrate,
    invert_formal,
    trivialize,
    verify_deformation,
)
from coaldef.deformation import _obstruction_cochain
from coaldef.exactlinalg import QQ, Matrix
from coaldef.problemfile import builtin_corpus, parse_problem_text, \
    serialize_problem

from helpers import (
    dilate_deformation,
    fresh_rng,
    random_bicomodule,
    random_cochain,
    random_cocycle,
    random_isomorphism,
    random_morphism,
    random_morphism_cochain,
)


def ok(criterion, detail):
    print(f"ACCEPTANCE {criterion}: PASS - {detail}")


def pool_morphisms():
    return [
        identity_morphism(grouplike(1)),
        identity_morphism(grouplike(2)),
        identity_morphism(divided_power(2)),
        collapse_morphism(2),
        collapse_morphism(3),
        identity_morphism(zero_comultiplication(2)),
        inclusion_morphism(grouplike(1), grouplike(1)),
    ]


@pytest.fixture(scope="module")
def integration_pool():
    """Deformations of order <= 3 built by repeated extension on fixtures."""
    rng = fresh_rng(20240801)
    pool = []
    morphisms = pool_morphisms()
    while len(pool) < 56:
        f = morphisms[len(pool) % len(morphisms)]
        comp = MorphismComplex(f)
        w = random_cocycle(comp, rng)
        if w.is_zero():
            continue
        result = integrate(w, 3)
        pool.append((comp, w, result))
    return pool


def test_criterion_01_hochschild_differential_squares_to_zero():
    rng = fresh_rng(101)
    started = time.perf_counter()
    count = 0
    while count < 200:
        m = random_bicomodule(rng, max_dim=3)
        if m.dim == 0:
            continue
        hc = HochschildComplex(m)
        degree = rng.randint(1, 3)
        w = random_cochain(m, degree, rng, bound=9)
        assert hc.differential(hc.differential(w)).is_zero()
        count += 1
    elapsed = time.perf_counter() - started
    assert elapsed < 60.0
    ok(1, f"{count} randomized coboundary-squared checks, exact zero, "
          f"{elapsed:.1f}s")


def test_criterion_02_deformation_differential_squares_to_zero():
    rng = fresh_rng(202)
    count = 0
    while count < 200:
        f = random_morphism(rng, max_dim=3)
        comp = MorphismComplex(f)
        degree = rng.randint(1, 3)
        w = random_morphism_cochain(comp, degree, rng, bound=9)
        assert comp.differential(comp.differential(w)).is_zero()
        count += 1
    ok(2, f"{count} randomized morphism-complex coboundary-squared checks, "
          f"exact zero")


def test_criterion_03_leading_coefficients_are_cocycles(integration_pool):
    rng = fresh_rng(303)
    checked = 0
    for comp, w, result in integration_pool:
        d = result.deformation
        assert verify_deformation(d).ok
        lead = infinitesimal(d)
        assert not lead.trivial
        assert lead.coefficient == w
        assert comp.differential(lead.coefficient).is_zero()
        assert lead.is_cocycle
        checked += 1
    assert checked >= 50
    shifted_checked = 0
    for comp, w, result in integration_pool[:8]:
        k = rng.randint(2, 3)
        shifted = dilate_deformation(result.deformation, k)
        assert verify_deformation(shifted).ok
        lead = infinitesimal(shifted)
        assert lead.generalized_order == k
        assert lead.coefficient == w
        assert comp.differential(lead.coefficient).is_zero()
        shifted_checked += 1
    ok(3, f"{checked} integrated deformations have exact 2-cocycle leading "
          f"coefficients; generalized clause on {shifted_checked} shifted "
          f"deformations")


def test_criterion_04_obstructions_are_three_cocycles(integration_pool):
    checked = 0
    for comp, _, result in integration_pool:
        d = result.deformation
        assert d.order <= 3
        ob = _obstruction_cochain(d)
        assert comp.differential(ob).is_zero()
        checked += 1
    assert checked >= 50
    ok(4, f"d_c of the obstruction cochain is exactly zero on {checked} "
          f"deformations of order <= 3")


def test_criterion_05_extension_criterion_both_directions(integration_pool):
    forward = 0
    converse = 0
    for comp, _, result in integration_pool:
        d = result.deformation
        out = extend(d)
        if isinstance(out, TruncatedDeformation):
            assert out.order == d.order + 1
            assert verify_deformation(out).ok
            forward += 1
            # converse: the restriction of the extension determines the
            # coboundary of its top coefficient
            back = out.truncate(d.order)
            assert back == d
            ob = _obstruction_cochain(back)
            assert comp.differential(out.coefficient(out.order)) == ob
            converse += 1
        else:
            assert isinstance(out, ObstructionClass)
            assert out.h3_class
        if d.order >= 2:
            trunc = d.truncate(d.order - 1)
            ob = _obstruction_cochain(trunc)
            assert comp.differential(d.coefficient(d.order)) == ob
            converse += 1
    assert forward >= 40 and converse >= 40
    ok(5, f"{forward} accepted extensions re-verify at order N+1; "
          f"{converse} truncations satisfy d_c(top coefficient) = obstruction "
          f"exactly")


def test_criterion_06_hand_derived_cohomology_oracle():
    hc = HochschildComplex(regular_bicomodule(grouplike(1)))
    hochschild_dims = [hc.cohomology(n).h_dim for n in (1, 2, 3)]
    assert hochschild_dims == [0, 0, 0]
    comp = MorphismComplex(identity_morphism(grouplike(1)))
    morphism_dims = [comp.cohomology(n).h_dim for n in (1, 2, 3)]
    assert morphism_dims == [0, 0, 0]
    ok(6, "grouplike(1) cohomology vanishes in degrees 1-3 for both "
          "complexes, matching the hand computation")


def test_criterion_07_divided_power_fixture_all_orders():
    f = identity_morphism(divided_power(2))
    comp = MorphismComplex(f)
    bump = Matrix.from_rows(QQ, [[0, 0], [0, 0], [0, 0], [0, 1]])
    w = comp.element(bump, bump, Matrix.zeros(QQ, 2, 2), 2)
    for order in range(1, 6):
        d = TruncatedDeformation.from_higher_coefficients(f, [w], order)
        for n in range(2, order + 1):
            assert d.coefficient(n).is_zero()
        assert verify_deformation(d).ok
    ok(7, "divided-power first-order deformation verifies exactly at every "
          "order up to 5 with zero higher coefficients")


def test_criterion_08_rigidity_of_scalar_identity():
    f = identity_morphism(grouplike(1))
    comp = MorphismComplex(f)
    assert comp.cohomology(2).h_dim == 0
    rng = fresh_rng(808)
    succeeded = 0
    for _ in range(20):
        order = rng.randint(1, 4)
        p = random_isomorphism(comp, order, rng)
        d = apply_equivalence(p, TruncatedDeformation.trivial(f, order))
        assert verify_deformation(d).ok
        result = trivialize(d)
        assert result.ok
        moved = apply_equivalence(result.isomorphism, d)
        assert all(moved.coefficient(i).is_zero() for i in range(1, order + 1))
        succeeded += 1
    assert succeeded == 20
    ok(8, f"trivialize succeeded on {succeeded} transported trivial "
          f"deformations and its output isomorphism flattens each one")


def test_criterion_09_equivalence_invariance(integration_pool):
    rng = fresh_rng(909)
    pairs = 0
    for comp, _, result in integration_pool:
        if pairs >= 20:
            break
        d = result.deformation
        p = random_isomorphism(comp, d.order, rng)
        moved = apply_equivalence(p, d)
        assert verify_deformation(moved).ok
        diff = moved.coefficient(1) - d.coefficient(1)
        pre = comp.is_coboundary(diff)
        assert pre is not None
        assert comp.differential(pre) == diff
        assert apply_equivalence(invert_formal(p), moved) == d
        pairs += 1
    assert pairs == 20
    ok(9, f"{pairs} transported deformations: first-order coefficients move "
          f"by exact coboundaries and inverse transport is the identity")


def test_criterion_10_cli_round_trip_determinism_exit_codes(tmp_path):
    corpus = builtin_corpus()
    for name, pf in corpus.items():
        text = serialize_problem(pf)
        again = parse_problem_text(text)
        assert again == pf
        assert serialize_problem(again) == text

    runner = CliRunner()
    fixtures = tmp_path / "fixtures.json"
    invalid = tmp_path / "invalid.json"
    obstructed = tmp_path / "obstructed.json"
    assert runner.invoke(cli_main, ["--fixtures", str(tmp_path)]).exit_code == 0

    def stable(output):
        return [l for l in output.splitlines() if not l.startswith("time:")]

    for args in (
        ["check", str(fixtures), "dp2_deformation"],
        ["cohomology", str(fixtures), "morphism", "id_divided_power2", "2"],
        ["obstruct", str(obstructed), "stuck_deformation"],
    ):
        first = runner.invoke(cli_main, args)
        second = runner.invoke(cli_main, args)
        assert stable(first.output) == stable(second.output)

    ok_run = runner.invoke(cli_main, ["check", str(fixtures), "grouplike2"])
    assert ok_run.exit_code == 0
    invalid_run = runner.invoke(cli_main, ["check", str(invalid), "broken"])
    assert invalid_run.exit_code == 1
    obstructed_run = runner.invoke(
        cli_main, ["integrate", str(obstructed), "stuck_cocycle", "3",
                   "-o", str(tmp_path / "out.json")])
    assert obstructed_run.exit_code == 1
    usage_run = runner.invoke(cli_main, ["check", str(fixtures), "nonsense"])
    assert usage_run.exit_code == 2
    ok(10, "corpus round-trips byte-identically, reports are deterministic, "
           "and exit codes are 0 (ok), 1 (invalid and obstructed), 2 (usage)")
