"""The JSON problem-file format of the batch front end.

A problem file is a single JSON object with a field declaration and up
to five named-object sections::

    {
      "field": "rational",                    // or {"prime": 13}
      "coalgebras":   {name: {"dim": d, "delta": [[a, b, c, coeff], ...]}},
      "morphisms":    {name: {"source": ..., "target": ..., "matrix": rows}},
      "cocycles":     {name: {"morphism": ..., "A": quads, "B": quads,
                              "F": rows}},
      "deformations": {name: {"morphism": ..., "order": N,
                              "coeffs": {"1": {"A": quads, "B": quads,
                                               "F": rows}, ...}}},
      "isomorphisms": {name: {"morphism": ..., "order": N,
                              "coeffs": {"1": {"A": rows, "B": rows}, ...}}}
    }

Scalars are exact strings ("3", "-2/7") or plain integers.  A quadruple
``[a, b, c, coeff]`` adds ``coeff * e_b (x) e_c`` to the image of
``e_a``; it describes any map X -> X (x) X (comultiplications and the
comultiplication slots of degree-2 cochains).  Plain linear maps are
dense row lists.  Deformation coefficient keys start at "1": the
order-0 coefficient is always the structure maps of the morphism and is
never stored.  Serialization is canonical (sorted keys, zero
coefficients omitted), so parse/serialize round-trips are identities.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dataclass_field

from .coalgebra import Coalgebra, CoalgebraMorphism, direct_sum, divided_power, \
    grouplike, zero_comultiplication
from .cohomology import MorphismCochain, MorphismComplex
from .deformation import FormalIsomorphism, TruncatedDeformation
from .exactlinalg import QQ, Matrix, PrimeField


class ProblemFileError(Exception):
    """The file does not parse or fails referential validation."""


@dataclass
class ProblemFile:
    field: object = QQ
    coalgebras: dict = dataclass_field(default_factory=dict)
    morphisms: dict = dataclass_field(default_factory=dict)
    cocycles: dict = dataclass_field(default_factory=dict)
    deformations: dict = dataclass_field(default_factory=dict)
    isomorphisms: dict = dataclass_field(default_factory=dict)


# ---------------------------------------------------------------------------
# scalar and matrix encoding


def _parse_scalar(field, x, where):
    if not isinstance(x, (int, str)):
        raise ProblemFileError(f"{where}: scalar must be an int or string, got {x!r}")
    try:
        return field.coerce(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ProblemFileError(f"{where}: bad scalar {x!r} ({exc})") from None


def _quadruples_to_matrix(field, quads, dim, where):
    """Structure-constant quadruples -> the (dim^2 x dim) matrix of the map."""
    if not isinstance(quads, list):
        raise ProblemFileError(f"{where}: expected a list of quadruples")
    rows = [[0] * dim for _ in range(dim * dim)]
    for q in quads:
        if not (isinstance(q, list) and len(q) == 4):
            raise ProblemFileError(f"{where}: quadruple must be [a, b, c, coeff]")
        a, b, c, coeff = q
        for idx in (a, b, c):
            if not isinstance(idx, int) or not 0 <= idx < dim:
                raise ProblemFileError(
                    f"{where}: basis index {idx} out of range for dim {dim}")
        _parse_scalar(field, coeff, where)
        rows[b * dim + c][a] = _entry_sum(field, rows[b * dim + c][a], coeff)
    if dim == 0:
        return Matrix.zeros(field, 0, 0)
    return Matrix.from_rows(field, rows)


def _entry_sum(field, acc, coeff):
    # repeated quadruples for one (a, b, c) accumulate
    from fractions import Fraction
    if field.kind == "rational":
        n, d = field.coerce(coeff)
        base = acc if isinstance(acc, Fraction) else Fraction(acc)
        return base + Fraction(n, d)
    return (field.coerce(acc) + field.coerce(coeff)) % field.p


def _matrix_to_quadruples(m: Matrix, dim):
    quads = []
    for a in range(dim):
        for b in range(dim):
            for c in range(dim):
                x = m[b * dim + c, a]
                if x:
                    quads.append([a, b, c, str(x)])
    return quads


def _rows_to_matrix(field, rows, shape, where):
    if not isinstance(rows, list) or len(rows) != shape[0] \
            or any(not isinstance(r, list) or len(r) != shape[1] for r in rows):
        raise ProblemFileError(
            f"{where}: expected a {shape[0]}x{shape[1]} row list")
    for r in rows:
        for x in r:
            _parse_scalar(field, x, where)
    if shape[0] == 0 or shape[1] == 0:
        return Matrix.zeros(field, *shape)
    return Matrix.from_rows(field, rows)


def _matrix_to_rows(m: Matrix):
    return [[str(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


# ---------------------------------------------------------------------------
# parsing


def parse_problem(obj, field_override=None) -> ProblemFile:
    if not isinstance(obj, dict):
        raise ProblemFileError("top level must be a JSON object")
    known = {"field", "coalgebras", "morphisms", "cocycles", "deformations",
             "isomorphisms"}
    for key in obj:
        if key not in known:
            raise ProblemFileError(f"unknown top-level section {key!r}")
    field = field_override or _parse_field(obj.get("field", "rational"))
    pf = ProblemFile(field=field)

    for name, spec in _section(obj, "coalgebras").items():
        where = f"coalgebras.{name}"
        dim = spec.get("dim")
        if not isinstance(dim, int) or dim < 0:
            raise ProblemFileError(f"{where}: dim must be a non-negative int")
        delta = _quadruples_to_matrix(field, spec.get("delta", []), dim, where)
        pf.coalgebras[name] = Coalgebra(name, dim, delta)

    for name, spec in _section(obj, "morphisms").items():
        where = f"morphisms.{name}"
        src = _resolve(pf.coalgebras, spec.get("source"), where + ".source")
        tgt = _resolve(pf.coalgebras, spec.get("target"), where + ".target")
        mat = _rows_to_matrix(field, spec.get("matrix"),
                              (tgt.dim, src.dim), where + ".matrix")
        pf.morphisms[name] = CoalgebraMorphism(src, tgt, mat)

    for name, spec in _section(obj, "cocycles").items():
        where = f"cocycles.{name}"
        f = _resolve(pf.morphisms, spec.get("morphism"), where + ".morphism")
        pf.cocycles[name] = _parse_coefficient(field, f, spec, 2, where)

    for name, spec in _section(obj, "deformations").items():
        where = f"deformations.{name}"
        f = _resolve(pf.morphisms, spec.get("morphism"), where + ".morphism")
        order = spec.get("order")
        if not isinstance(order, int) or order < 0:
            raise ProblemFileError(f"{where}: order must be a non-negative int")
        comp = MorphismComplex(f, validate=False)
        higher = [comp.zero(2) for _ in range(order)]
        for key, cspec in _section(spec, "coeffs", where).items():
            n = _coeff_order(key, order, where)
            higher[n - 1] = _parse_coefficient(field, f, cspec, 2,
                                               f"{where}.coeffs.{key}", comp)
        d = TruncatedDeformation(f, [comp.element(
            f.source.delta, f.target.delta, f.matrix, 2)] + higher)
        d._complex = comp
        pf.deformations[name] = d

    for name, spec in _section(obj, "isomorphisms").items():
        where = f"isomorphisms.{name}"
        f = _resolve(pf.morphisms, spec.get("morphism"), where + ".morphism")
        order = spec.get("order")
        if not isinstance(order, int) or order < 0:
            raise ProblemFileError(f"{where}: order must be a non-negative int")
        comp = MorphismComplex(f, validate=False)
        higher = [comp.zero(1) for _ in range(order)]
        for key, cspec in _section(spec, "coeffs", where).items():
            n = _coeff_order(key, order, where)
            a = _rows_to_matrix(field, cspec.get("A"),
                                (f.source.dim, f.source.dim),
                                f"{where}.coeffs.{key}.A")
            b = _rows_to_matrix(field, cspec.get("B"),
                                (f.target.dim, f.target.dim),
                                f"{where}.coeffs.{key}.B")
            higher[n - 1] = comp.element(a, b, None, 1)
        ident = comp.element(Matrix.identity(field, f.source.dim),
                             Matrix.identity(field, f.target.dim), None, 1)
        pf.isomorphisms[name] = FormalIsomorphism(f, [ident] + higher)

    return pf


def _parse_field(spec):
    if spec == "rational":
        return QQ
    if isinstance(spec, dict) and set(spec) == {"prime"}:
        p = spec["prime"]
        if not isinstance(p, int):
            raise ProblemFileError("field.prime must be an int")
        try:
            return PrimeField(p)
        except ValueError as exc:
            raise ProblemFileError(str(exc)) from None
    raise ProblemFileError(
        f"field must be \"rational\" or {{\"prime\": p}}, got {spec!r}")


def parse_field_spec(text):
    """Parse a command-line field designation: 'rational' or 'prime:p'."""
    if text == "rational":
        return QQ
    if text.startswith("prime:"):
        try:
            return PrimeField(int(text.split(":", 1)[1]))
        except ValueError as exc:
            raise ProblemFileError(f"bad field {text!r}: {exc}") from None
    raise ProblemFileError(
        f"bad field {text!r} (expected 'rational' or 'prime:<p>')")


def _section(obj, key, where=""):
    sec = obj.get(key, {})
    if not isinstance(sec, dict):
        raise ProblemFileError(f"{where or key}: must be an object")
    for name, spec in sec.items():
        if not isinstance(spec, dict):
            raise ProblemFileError(f"{where or key}.{name}: must be an object")
    return sec


def _resolve(table, name, where):
    if not isinstance(name, str):
        raise ProblemFileError(f"{where}: expected a name string")
    if name not in table:
        raise ProblemFileError(f"{where}: unknown name {name!r}")
    return table[name]


def _coeff_order(key, order, where):
    try:
        n = int(key)
    except ValueError:
        raise ProblemFileError(f"{where}: coefficient key {key!r} is not an "
                               f"integer") from None
    if not 1 <= n <= order:
        raise ProblemFileError(
            f"{where}: coefficient order {n} outside 1..{order} "
            f"(order 0 is fixed by the morphism)")
    return n


def _parse_coefficient(field, f, spec, degree, where, comp=None):
    if comp is None:
        comp = MorphismComplex(f, validate=False)
    a = _quadruples_to_matrix(field, spec.get("A", []), f.source.dim,
                              where + ".A")
    b = _quadruples_to_matrix(field, spec.get("B", []), f.target.dim,
                              where + ".B")
    fm = spec.get("F")
    if fm is None:
        fmat = Matrix.zeros(field, f.target.dim, f.source.dim)
    else:
        fmat = _rows_to_matrix(field, fm, (f.target.dim, f.source.dim),
                               where + ".F")
    return comp.element(a, b, fmat, degree)


def parse_problem_text(text, field_override=None) -> ProblemFile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFileError(f"invalid JSON: {exc}") from None
    return parse_problem(obj, field_override)


def load_problem(path, field_override=None) -> ProblemFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ProblemFileError(f"cannot read {path}: {exc}") from None
    return parse_problem_text(text, field_override)


# ---------------------------------------------------------------------------
# serialization


def serialize_problem(pf: ProblemFile) -> str:
    obj = {"field": _field_spec(pf.field)}
    if pf.coalgebras:
        obj["coalgebras"] = {
            name: {"dim": c.dim,
                   "delta": _matrix_to_quadruples(c.delta, c.dim)}
            for name, c in pf.coalgebras.items()
        }
    if pf.morphisms:
        obj["morphisms"] = {
            name: {"source": _name_of(pf, f.source, name),
                   "target": _name_of(pf, f.target, name),
                   "matrix": _matrix_to_rows(f.matrix)}
            for name, f in pf.morphisms.items()
        }
    if pf.cocycles:
        obj["cocycles"] = {
            name: {"morphism": _morphism_name(pf, w.morphism, name),
                   **_coefficient_spec(w)}
            for name, w in pf.cocycles.items()
        }
    if pf.deformations:
        obj["deformations"] = {}
        for name, d in pf.deformations.items():
            coeffs = {}
            for n in range(1, d.order + 1):
                if not d.coefficient(n).is_zero():
                    coeffs[str(n)] = _coefficient_spec(d.coefficient(n))
            obj["deformations"][name] = {
                "morphism": _morphism_name(pf, d.morphism, name),
                "order": d.order,
                "coeffs": coeffs,
            }
    if pf.isomorphisms:
        obj["isomorphisms"] = {}
        for name, p in pf.isomorphisms.items():
            coeffs = {}
            for n in range(1, p.order + 1):
                c = p.coefficient(n)
                if not c.is_zero():
                    coeffs[str(n)] = {
                        "A": _matrix_to_rows(c.a_part.matrix),
                        "B": _matrix_to_rows(c.b_part.matrix),
                    }
            obj["isomorphisms"][name] = {
                "morphism": _morphism_name(pf, p.morphism, name),
                "order": p.order,
                "coeffs": coeffs,
            }
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_problem(pf: ProblemFile, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_problem(pf))


def _field_spec(field):
    if field.kind == "rational":
        return "rational"
    return {"prime": field.p}


def _coefficient_spec(w: MorphismCochain):
    f = w.morphism
    return {
        "A": _matrix_to_quadruples(w.a_part.matrix, f.source.dim),
        "B": _matrix_to_quadruples(w.b_part.matrix, f.target.dim),
        "F": _matrix_to_rows(w.ab_part.matrix),
    }


def _name_of(pf, coalg, context):
    for name, c in pf.coalgebras.items():
        if c is coalg or c == coalg:
            return name
    raise ProblemFileError(
        f"cannot serialize {context!r}: its coalgebra {coalg.name!r} is not "
        f"in the file")


def _morphism_name(pf, f, context):
    for name, g in pf.morphisms.items():
        if g is f or g == f:
            return name
    raise ProblemFileError(
        f"cannot serialize {context!r}: its morphism is not in the file")


# ---------------------------------------------------------------------------
# built-in corpus


def builtin_corpus(field=QQ) -> dict:
    """The fixture problem files emitted by the command-line front end.

    ``fixtures`` holds valid structures (including the divided-power
    deformation and its infinitesimal), ``invalid`` a non-coassociative
    coalgebra, and ``obstructed`` a cocycle over the two-dimensional
    zero-comultiplication coalgebra whose integration blocks at order 2
    (its obstruction has a nonzero degree-3 class because the complex
    has zero differentials in the relevant spots).
    """
    g1 = grouplike(1, field)
    g2 = grouplike(2, field)
    g3 = grouplike(3, field)
    dp2 = divided_power(2, field)
    dp3 = divided_power(3, field)
    s12 = direct_sum(g1, dp2, name="sum_g1_dp2")
    nil = Coalgebra("nil", 0, Matrix.zeros(field, 0, 0))

    fixtures = ProblemFile(field=field)
    for c in (g1, g2, g3, dp2, dp3, s12, nil):
        fixtures.coalgebras[c.name] = c

    def ident(c):
        return CoalgebraMorphism(c, c, Matrix.identity(field, c.dim))

    fixtures.morphisms["id_grouplike1"] = ident(g1)
    fixtures.morphisms["id_grouplike2"] = ident(g2)
    fixtures.morphisms["id_divided_power2"] = ident(dp2)
    fixtures.morphisms["collapse2"] = CoalgebraMorphism(
        g2, g1, Matrix.from_rows(field, [[1, 1]]))
    incl = Matrix.zeros(field, 3, 1)
    incl._num[0] = 1
    fixtures.morphisms["include_g1"] = CoalgebraMorphism(g1, s12, incl)

    fid = fixtures.morphisms["id_divided_power2"]
    comp = MorphismComplex(fid)
    bump = Matrix.zeros(field, 4, 2)
    bump._num[3 * 2 + 1] = 1  # e1 -> e1 (x) e1
    w = comp.element(bump, bump, Matrix.zeros(field, 2, 2), 2)
    fixtures.cocycles["dp2_infinitesimal"] = w
    fixtures.cocycles["zero_g1"] = MorphismComplex(
        fixtures.morphisms["id_grouplike1"]).zero(2)
    d = TruncatedDeformation.from_higher_coefficients(fid, [w], 2)
    fixtures.deformations["dp2_deformation"] = d
    fixtures.deformations["trivial_g1"] = TruncatedDeformation.trivial(
        fixtures.morphisms["id_grouplike1"], 3)

    iso_comp = MorphismComplex(fixtures.morphisms["id_grouplike1"])
    two = Matrix.from_rows(field, [[2]])
    fixtures.isomorphisms["g1_iso"] = FormalIsomorphism.from_higher_coefficients(
        fixtures.morphisms["id_grouplike1"],
        [iso_comp.element(two, two, None, 1)], 2)

    invalid = ProblemFile(field=field)
    broken_delta = Matrix.zeros(field, 4, 2)
    broken_delta._num[1 * 2 + 0] = 1  # e0 -> e0 (x) e1: not coassociative
    invalid.coalgebras["broken"] = Coalgebra("broken", 2, broken_delta)

    obstructed = ProblemFile(field=field)
    z2 = zero_comultiplication(2, field)
    obstructed.coalgebras[z2.name] = z2
    fz = CoalgebraMorphism(z2, z2, Matrix.identity(field, 2))
    obstructed.morphisms["id_zero2"] = fz
    zcomp = MorphismComplex(fz)
    knot = Matrix.zeros(field, 4, 2)
    knot._num[1 * 2 + 0] = 1  # e0 -> e0 (x) e1: not coassociative, yet a cocycle here
    wz = zcomp.element(knot, knot, Matrix.zeros(field, 2, 2), 2)
    obstructed.cocycles["stuck_cocycle"] = wz
    obstructed.deformations["stuck_deformation"] = \
        TruncatedDeformation.from_higher_coefficients(fz, [wz], 1)

    return {"fixtures": fixtures, "invalid": invalid, "obstructed": obstructed}
