"""Scenario files: a group, an action, limits and a list of queries.

A scenario is JSON::

    {"name": "...",
     "group": "S3" | {"elements": [...], "table": [[...]]}
                   | {"permutation_generators": [[...]]} | "GL2" | "Dinf",
     "action": {"action": "conjugation_I" | "conjugation_II" | "induced"
                          | "table" | "trivial", ...},
     "limits": {"max_depth": 8, "sample_length": 6},
     "queries": [{"op": "orbit", "point": "(12)", "expect": {...}}, ...]}

All references are resolved before any query runs. Each query with an
``expect`` entry is an assertion; the run fails if any assertion fails.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from bispace import actions as act
from bispace import catalog, groups, laws, matrix, orbits, words
from bispace.errors import BispaceError, CarrierEscape
from bispace.groups import FiniteGroup, Subgroup
from bispace.matrix import UPPER_UNITRIANGULAR, Mat2, MatrixGroup, in_subgroup, order_bounded
from bispace.report import COMPUTED, ERROR, MATCHED, MISMATCHED, Entry, Report

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_VALIDATION = 4

FINITE, GL2, DINF = "finite", "GL2", "Dinf"


class ScenarioError(Exception):
    exit_code = EXIT_VALIDATION


class ParseError(ScenarioError):
    exit_code = EXIT_PARSE


class ValidationError(ScenarioError):
    exit_code = EXIT_VALIDATION


@dataclass
class Limits:
    max_depth: int = orbits.DEFAULT_MAX_DEPTH
    sample_length: int = 6
    violation_limit: int = 10

    def __post_init__(self):
        for k in ("max_depth", "sample_length", "violation_limit"):
            v = getattr(self, k)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ValidationError(f"limit {k} must be a positive integer, got {v!r}")


_MATRIX_SAMPLE = ([[1, 0], [0, 1]], [[0, 1], [1, 0]], [[1, 1], [0, 1]], [[2, 0], [0, 1]],
                  [[0, -1], [1, -1]], [[-1, 0], [1, 1]], [[1, 0], [0, -1]])


@dataclass
class Context:
    """The resolved group and action of a scenario, plus value rendering."""

    world: str
    group: FiniteGroup | None = None
    action: act.BinaryAction | None = None
    unary: act.UnaryAction | None = None
    action_kind: str | None = None
    limits: Limits = field(default_factory=Limits)

    # -- reading values -------------------------------------------------

    def point(self, v):
        if self.world == GL2:
            return _matrix(v)
        if self.world == DINF:
            return _word(v)
        if self.action is None:
            return self.group_element(v)
        for p in self.action.carrier.points:
            if self.action.label(p) == v or (isinstance(v, int) and not isinstance(v, bool)
                                              and self.action.carrier.index.get(p) == v):
                return p
        raise ValidationError(f"{v!r} is not a point of the carrier")

    def group_element(self, v):
        if self.world == GL2:
            return _matrix(v)
        if self.world == DINF:
            return _word(v)
        try:
            return self.group.index(v)
        except BispaceError as exc:
            raise ValidationError(str(exc)) from None

    def acting_element(self, v):
        g = self.group_element(v)
        if self.action is not None and g not in self.action.group:
            raise ValidationError(f"{v!r} is not in the acting group")
        return g

    # -- rendering -------------------------------------------------------

    def render(self, p) -> str:
        if isinstance(p, (Mat2, words.DWord)):
            return str(p)
        if self.action is not None and p in self.action.carrier.index:
            return self.action.label(p)
        if self.group is not None and isinstance(p, int):
            return self.group.names[p]
        return str(p)

    def render_g(self, g) -> str:
        if isinstance(g, (Mat2, words.DWord)):
            return str(g)
        return self.group.names[g]

    def render_set(self, S) -> list[str]:
        if self.action is not None:
            S = orbits.ordered(self.action, S)
        else:
            S = sorted(S)
        return [self.render(p) for p in S]

    def canon(self, v):
        """Normalize an expected value the way results are rendered."""
        if v is None or isinstance(v, (bool, int, float)):
            return v
        if isinstance(v, dict):
            return {k: self.canon(x) for k, x in v.items()}
        if self.world == GL2 and _looks_like_matrix(v):
            return str(_matrix(v))
        if isinstance(v, list):
            return [self.canon(x) for x in v]
        try:
            return self.render(self.point(v))
        except (ScenarioError, BispaceError, TypeError, ValueError):
            return v


def _looks_like_matrix(v) -> bool:
    return (isinstance(v, list) and len(v) == 2
            and all(isinstance(r, list) and len(r) == 2 and all(not isinstance(c, list) for c in r)
                    for r in v))


def _matrix(v) -> Mat2:
    try:
        m = Mat2.of(v)
    except (BispaceError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad matrix literal {v!r}: {exc}") from None
    return m


def _word(v) -> words.DWord:
    if not isinstance(v, str):
        raise ValidationError(f"word literal must be a string, got {v!r}")
    try:
        return words.parse_word(v)
    except BispaceError as exc:
        raise ValidationError(str(exc)) from None


# -- building groups and actions ----------------------------------------


def build_group(spec) -> tuple[str, FiniteGroup | None]:
    try:
        if spec in (GL2, "GL(2)"):
            return GL2, None
        if spec in (DINF, "D_inf"):
            return DINF, None
        if isinstance(spec, str):
            return FINITE, catalog.get(spec)
        if isinstance(spec, dict):
            name = spec.get("name", "G")
            if "catalog" in spec:
                return FINITE, catalog.get(spec["catalog"])
            if "permutation_generators" in spec:
                return FINITE, FiniteGroup.from_permutations(spec["permutation_generators"], name)
            if "table" in spec:
                names = spec.get("elements") or [str(i) for i in range(len(spec["table"]))]
                return FINITE, FiniteGroup.from_table(names, spec["table"], name)
    except BispaceError as exc:
        raise ValidationError(f"invalid group: {exc}") from None
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"invalid group: {exc}") from None
    raise ValidationError(f"unrecognized group specification {spec!r}")


def build_subgroup(ctx: Context, spec):
    if ctx.world == FINITE:
        G = ctx.group
        if spec in (None, "whole"):
            return G.whole
        if spec == "trivial":
            return G.trivial
        if isinstance(spec, dict) and "generators" in spec:
            return groups.subgroup_generated(G, [ctx.group_element(g) for g in spec["generators"]])
        if isinstance(spec, dict) and "elements" in spec:
            try:
                return Subgroup.of(G, [ctx.group_element(g) for g in spec["elements"]])
            except BispaceError as exc:
                raise ValidationError(str(exc)) from None
    elif ctx.world == GL2:
        if isinstance(spec, dict) and "kind" in spec and spec["kind"] != matrix.FINITE_LISTED:
            try:
                return MatrixGroup(spec["kind"])
            except BispaceError as exc:
                raise ValidationError(str(exc)) from None
        if spec in (None, "whole"):
            return MatrixGroup(matrix.WHOLE_GL2)
        if isinstance(spec, dict) and ("generators" in spec or "elements" in spec):
            try:
                if "generators" in spec:
                    return MatrixGroup.generated([_matrix(m) for m in spec["generators"]])
                return MatrixGroup.listed_group([_matrix(m) for m in spec["elements"]])
            except BispaceError as exc:
                raise ValidationError(str(exc)) from None
    else:
        if isinstance(spec, dict) and "generators" in spec:
            try:
                return words.WordGroup.generated([_word(w) for w in spec["generators"]])
            except BispaceError as exc:
                raise ValidationError(str(exc)) from None
        if spec is None:
            return words.WordGroup.generated_by_h()
    raise ValidationError(f"unrecognized subgroup specification {spec!r}")


def _carrier(ctx: Context, spec: dict):
    if ctx.world == FINITE:
        return None  # default: the group itself
    if ctx.world == DINF:
        return words.word_carrier(ctx.limits.sample_length)
    pts = [_matrix(m) for m in list(_MATRIX_SAMPLE) + list(spec.get("points", []))]
    pts = tuple(dict.fromkeys(pts))
    return act.Carrier(act.MATRIX_SET, pts, universe=lambda m: isinstance(m, Mat2) and m.det != 0,
                       exhaustive=False)


def build_unary(ctx: Context, spec) -> act.UnaryAction:
    G = ctx.group
    if spec in (None, "left_translation"):
        return act.left_translation(G)
    if spec == "trivial":
        return act.trivial_unary(G)
    if isinstance(spec, dict) and "cosets_of" in spec:
        return act.coset_action(G, build_subgroup(ctx, spec["cosets_of"]))
    raise ValidationError(f"unrecognized unary action {spec!r}")


def build_action(ctx: Context, spec) -> None:
    if spec is None:
        return
    if not isinstance(spec, dict) or "action" not in spec:
        raise ValidationError("action descriptor must be an object with an 'action' field")
    kind = ctx.action_kind = spec["action"]
    if kind in ("conjugation_I", "conjugation_II"):
        H = build_subgroup(ctx, spec.get("subgroup"))
        make = act.conjugation_action_I if kind == "conjugation_I" else act.conjugation_action_II
        ctx.action = make(H, _carrier(ctx, spec))
        return
    if ctx.world != FINITE:
        raise ValidationError(f"action {kind!r} needs a finite group")
    if kind == "induced":
        ctx.unary = build_unary(ctx, spec.get("unary"))
        ctx.action = act.induced_action(ctx.unary)
    elif kind == "trivial":
        ctx.action = act.trivial_action(ctx.group.whole, act.Carrier.of_group(ctx.group))
    elif kind == "table":
        pts = spec.get("points")
        if not isinstance(pts, list) or not pts:
            raise ValidationError("table action needs a nonempty 'points' list")
        try:
            ctx.action = act.table_action(ctx.group.whole, [str(p) for p in pts], spec.get("table", []),
                                          labels=[str(p) for p in pts])
        except BispaceError as exc:
            raise ValidationError(str(exc)) from None
    else:
        raise ValidationError(f"unknown action kind {kind!r}")


# -- queries -------------------------------------------------------------

# argument name -> how to resolve it
_ARG_KINDS = {
    "point": "point", "x": "point", "y": "point", "x2": "point",
    "x1": "point", "set": "points", "set2": "points",
    "g": "acting", "h": "acting",
    "matrix": "matrix", "n": "int", "bound": "int", "max_depth": "int",
    "subgroup": "subgroup", "kind": "raw", "group": "raw", "image_of": "point",
}

_NEEDS_ACTION = {"verify_axioms", "apply", "image_set", "orbit", "classify_orbit", "is_bi_invariant",
                 "orbits_intersect", "intersect_bi_invariant", "check_distributive",
                 "distributive_image_law", "union_witness", "natural_square"}
_NEEDS_FINITE = {"left_cosets", "normalizer", "commutator_subgroup", "kernel_criterion", "union_witness",
                 "natural_square"}


@dataclass
class Query:
    op: str
    args: dict
    expect: Any = None
    has_expect: bool = False
    note: str | None = None


def _resolve_arg(ctx: Context, op: str, name: str, v):
    kind = _ARG_KINDS.get(name)
    if kind is None:
        raise ValidationError(f"unknown query argument {name!r}")
    if kind == "point":
        return ctx.point(v)
    if kind == "points":
        if not isinstance(v, list):
            raise ValidationError(f"{name} must be a list of points")
        return frozenset(ctx.point(p) for p in v)
    if kind == "acting":
        return ctx.acting_element(v) if op == "apply" else ctx.group_element(v)
    if kind == "matrix":
        return _matrix(v)
    if kind == "int":
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise ValidationError(f"{name} must be a positive integer")
        return v
    if kind == "subgroup":
        return build_subgroup(ctx, v)
    return v


def resolve_query(ctx: Context, raw) -> Query:
    if not isinstance(raw, dict) or "op" not in raw:
        raise ValidationError(f"query must be an object with an 'op' field: {raw!r}")
    op = raw["op"]
    if op not in OPS:
        raise ValidationError(f"unknown operation {op!r}")
    if op in _NEEDS_ACTION and ctx.action is None:
        raise ValidationError(f"{op} needs an action")
    if op in _NEEDS_FINITE and ctx.world != FINITE:
        raise ValidationError(f"{op} needs a finite group")
    if op == "normalizer_criterion" and ctx.action_kind != "conjugation_I":
        raise ValidationError("normalizer_criterion needs a conjugation_I action")
    if op == "kernel_criterion" and ctx.unary is None:
        raise ValidationError("kernel_criterion needs an induced action")
    args = {k: _resolve_arg(ctx, op, k, v) for k, v in raw.items() if k not in ("op", "expect", "note")}
    return Query(op, args, ctx.canon(raw.get("expect")), "expect" in raw, raw.get("note"))


@dataclass
class Scenario:
    name: str
    ctx: Context
    queries: list


def load_scenario(source) -> Scenario:
    """Parse and validate a scenario from a path, JSON text, or dict."""
    if isinstance(source, dict):
        data = source
    else:
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read scenario: {exc}") from None
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ParseError("scenario must be a JSON object")
    try:
        limits = Limits(**data.get("limits", {}))
    except TypeError as exc:
        raise ValidationError(f"bad limits: {exc}") from None
    world, G = build_group(data.get("group", "S3"))
    ctx = Context(world, G, limits=limits)
    build_action(ctx, data.get("action"))
    queries = data.get("queries", [])
    if not isinstance(queries, list):
        raise ValidationError("queries must be a list")
    resolved = [resolve_query(ctx, q) for q in queries]
    return Scenario(data.get("name", "scenario"), ctx, resolved)


def matches(expected, actual) -> bool:
    if isinstance(expected, dict):
        return isinstance(actual, dict) and all(k in actual and matches(v, actual[k])
                                                for k, v in expected.items())
    if isinstance(expected, list) and isinstance(actual, list):
        if all(not isinstance(v, (list, dict)) for v in expected + actual):
            return sorted(map(str, expected)) == sorted(map(str, actual)) and len(expected) == len(actual)
        return len(expected) == len(actual) and all(matches(e, a) for e, a in zip(expected, actual))
    return expected == actual


def execute(ctx: Context, q: Query) -> Entry:
    try:
        result, summary = OPS[q.op](ctx, **q.args)
    except (BispaceError, CarrierEscape) as exc:
        return Entry(q.op, ERROR, f"{type(exc).__name__}: {exc}", {}, q.expect if q.has_expect else None, q.note)
    if not q.has_expect:
        return Entry(q.op, COMPUTED, summary, result, None, q.note)
    target = result if isinstance(q.expect, dict) else result.get("value")
    status = MATCHED if matches(q.expect, target) else MISMATCHED
    return Entry(q.op, status, summary, result, q.expect, q.note)


def run_scenario(source, title: str | None = None) -> tuple[Report, int]:
    """Run every query; exit status 0 iff all expectations hold."""
    sc = load_scenario(source)
    report = Report(title or sc.name)
    for q in sc.queries:
        report.add(execute(sc.ctx, q))
    return report, (EXIT_OK if report.ok else EXIT_ASSERTION)


# -- operations ----------------------------------------------------------
# Each returns (result, summary). ``result["value"]`` is what a scalar
# expectation is compared against.


def _cx(ctx: Context, report: laws.LawReport):
    c = report.counterexample
    if c is None:
        return None
    return {"g": ctx.render_g(c["g"]), "h": ctx.render_g(c["h"]), "x": ctx.render(c["x"]),
            "x1": ctx.render(c["x1"]), "x2": ctx.render(c["x2"]),
            "lhs": ctx.render(c["lhs"]), "rhs": ctx.render(c["rhs"])}


def _witness(ctx: Context, w):
    if w is None:
        return None
    g, a, b, v = w
    return {"g": ctx.render_g(g), "a1": ctx.render(a), "a2": ctx.render(b), "value": ctx.render(v)}


def op_verify_axioms(ctx):
    r = act.verify_axioms(ctx.action, limit=ctx.limits.violation_limit)

    def viol(v):
        return {"g": ctx.render_g(v.g), "h": None if v.h is None else ctx.render_g(v.h),
                "x1": ctx.render(v.x1), "x2": ctx.render(v.x2),
                "lhs": ctx.render(v.lhs), "rhs": ctx.render(v.rhs)}

    res = {"value": r.ok, "exhaustive": r.exhaustive,
           "eq1_violations": [viol(v) for v in r.eq1_violations],
           "eq2_violations": [viol(v) for v in r.eq2_violations]}
    scope = "exhaustive" if r.exhaustive else "sampled"
    if r.ok:
        return res, f"axioms hold ({scope})"
    return res, (f"{len(r.eq1_violations)} composition and {len(r.eq2_violations)} identity "
                 f"violations ({scope})")


def op_apply(ctx, g, x1, x2):
    v = ctx.action.checked(g, x1, x2)
    s = ctx.render(v)
    return {"value": s}, f"{ctx.render_g(g)}({ctx.render(x1)}, {ctx.render(x2)}) = {s}"


def op_image_set(ctx, set):
    S = orbits.image_set(ctx.action, set)
    out = ctx.render_set(S)
    return {"value": out}, f"G(S,S) has {len(out)} points: {{{', '.join(out)}}}"


def _layers_result(ctx, L: orbits.OrbitLayers):
    return {"value": L.converged, "point": ctx.render(L.base), "sizes": L.sizes,
            "converged": L.converged, "depth": L.depth_reached,
            "layers": [ctx.render_set(S) for S in L.layers],
            "orbit": ctx.render_set(L.orbit) if L.converged else None}


def op_orbit(ctx, point, max_depth=None):
    L = orbits.orbit_layers(ctx.action, point, max_depth or ctx.limits.max_depth)
    res = _layers_result(ctx, L)
    if L.converged:
        s = (f"[{ctx.render(point)}] converged at depth {L.depth_reached}, "
             f"{len(L.orbit)} points; layer sizes {L.sizes}")
    else:
        s = f"[{ctx.render(point)}] not converged by depth {L.depth_reached}; layer sizes {L.sizes}"
    return res, s


def op_classify_orbit(ctx, point, max_depth=None):
    c = orbits.classify_orbit(ctx.action, point, max_depth or ctx.limits.max_depth)
    res = {"value": c.verdict, "verdict": c.verdict, "depth": c.depth, "sizes": c.layers.sizes}
    return res, f"{c.verdict} at {c.depth}; layer sizes {c.layers.sizes}"


def op_is_bi_invariant(ctx, set=None, image_of=None):
    if image_of is not None:
        S = orbits.PointImage(image_of) if ctx.action.group.elements is None else \
            orbits.image_set(ctx.action, {image_of})
        what = f"G({ctx.render(image_of)},{ctx.render(image_of)})"
    elif set is not None:
        S, what = set, "S"
    else:
        raise ValidationError("is_bi_invariant needs 'set' or 'image_of'")
    w = orbits.bi_invariance_witness(ctx.action, S)
    bi = orbits.is_bi_invariant(ctx.action, S) if w is None else False
    res = {"value": bi, "witness": _witness(ctx, w)}
    if bi:
        return res, f"{what} is bi-invariant"
    wr = res["witness"]
    return res, f"{what} is not bi-invariant: {wr['g']}({wr['a1']}, {wr['a2']}) = {wr['value']} escapes"


def op_orbits_intersect(ctx, x, y, max_depth=None):
    r = orbits.orbits_intersect(ctx.action, x, y, max_depth or ctx.limits.max_depth)
    w = None if r.witness is None else ctx.render(r.witness)
    res = {"value": w, "witness": w, "depth": r.depth, "certified_disjoint": r.certified_disjoint}
    if w is not None:
        return res, f"[{ctx.render(x)}] and [{ctx.render(y)}] meet at {w} (depth {r.depth})"
    kind = "disjoint" if r.certified_disjoint else "no common point"
    return res, f"[{ctx.render(x)}] and [{ctx.render(y)}]: {kind} up to depth {r.depth}"


def op_intersect_bi_invariant(ctx, set, set2):
    S = orbits.intersect_bi_invariant(ctx.action, set, set2)
    out = ctx.render_set(S)
    return {"value": out, "bi_invariant": orbits.is_bi_invariant(ctx.action, S)}, \
        f"intersection {{{', '.join(out)}}}"


def op_check_distributive(ctx):
    r = laws.is_distributive(ctx.action)
    res = {"value": r.holds, "exhaustive": r.details["exhaustive"], "counterexample": _cx(ctx, r)}
    if r.holds:
        return res, "distributive" + ("" if r.details["exhaustive"] else " on the sampled domain")
    res["recheck"] = laws.recheck(ctx.action, r)
    c = res["counterexample"]
    return res, (f"not distributive: g={c['g']}, h={c['h']}, x={c['x']}, x'={c['x1']}, x''={c['x2']}: "
                 f"{c['lhs']} != {c['rhs']}")


def op_distributive_image_law(ctx, x, x2):
    r = laws.distributive_image_law(ctx.action, x, x2)
    res = {"value": r.holds, "G(x,x')": ctx.render_set(r.details["G(x,x')"]),
           "lhs": ctx.render_set(r.details["lhs"])}
    return res, f"G(G(x,x),G(x,x')) = G(x,x'): {r.verdict}"


def op_normalizer_criterion(ctx, point):
    r = laws.normalizer_criterion(ctx.action.group, point)
    d = r.details
    nw = d["normalizer_witness"]
    res = {"value": r.holds, "bi_invariant": d["bi_invariant"],
           "conjugate_in_normalizer": d["conjugate_in_normalizer"],
           "bi_invariance_witness": _witness(ctx, d["bi_invariance_witness"]),
           "normalizer_witness": None if nw is None else
           {"conjugate": ctx.render(nw["conjugate"]), "moved": ctx.render(nw["moved"])}}
    s = (f"x={ctx.render(point)}: H(x,x) bi-invariant={d['bi_invariant']}, "
         f"x^-1Hx in N(H)={d['conjugate_in_normalizer']} -> sides {'agree' if r.holds else 'DISAGREE'}")
    if nw is not None:
        s += f"; {ctx.render(nw['conjugate'])} moves H to {ctx.render(nw['moved'])}"
    return res, s


def op_kernel_criterion(ctx):
    r = laws.induced_distributivity_criterion(ctx.unary)
    d = r.details
    res = {"value": r.holds, "distributive": d["distributive"],
           "commutator_in_kernel": d["commutator_in_kernel"],
           "commutator_subgroup": ctx.render_set(d["commutator_subgroup"]),
           "kernel": [ctx.group.names[g] for g in sorted(d["kernel"])]}
    return res, (f"distributive={d['distributive']}, G' in Ker={d['commutator_in_kernel']} -> "
                 f"sides {'agree' if r.holds else 'DISAGREE'}")


def op_problem1(ctx, group=None):
    G = catalog.get(group) if group else ctx.group
    if G is None:
        raise ValidationError("problem1 needs a finite group")
    pctx = Context(FINITE, G)
    cert = laws.problem1_counterexample(G)
    pctx.action = cert.action
    res = {"value": cert.certified, "group": G.name,
           "all_G(x,x)_bi_invariant": all(cert.bi_invariant.values()),
           "points_checked": len(cert.bi_invariant),
           "distributive": cert.distributivity.holds,
           "counterexample": _cx(pctx, cert.distributivity), "recheck": cert.recheck_ok}
    c = res["counterexample"]
    return res, (f"{G.name}: all {len(cert.bi_invariant)} sets G(x,x) bi-invariant, not distributive at "
                 f"(g={c['g']}, h={c['h']}, x={c['x']}, x'={c['x1']}, x''={c['x2']})")


def op_left_cosets(ctx, subgroup=None):
    H = subgroup or ctx.action.group
    blocks = groups.left_cosets(ctx.group, H)
    out = [[ctx.group.names[g] for g in sorted(b)] for b in blocks]
    return {"value": out}, f"{len(out)} cosets of size {H.order}"


def op_normalizer(ctx, subgroup=None):
    H = subgroup or ctx.action.group
    N = groups.normalizer(ctx.group, H)
    out = [ctx.group.names[g] for g in N.elements]
    return {"value": out}, f"N(H) = {{{', '.join(out)}}}"


def op_commutator_subgroup(ctx):
    C = groups.commutator_subgroup(ctx.group)
    out = [ctx.group.names[g] for g in C.elements]
    return {"value": out}, f"G' = {{{', '.join(out)}}}"


def op_conjugate(ctx, g, h):
    v = matrix.mat_mul(matrix.mat_mul(matrix.mat_inv(g), h), g) if isinstance(g, Mat2) else \
        ctx.group.conjugate(h, g)
    s = ctx.render(v)
    return {"value": s}, f"{ctx.render_g(g)}^-1 {ctx.render_g(h)} {ctx.render_g(g)} = {s}"


def op_in_subgroup(ctx, matrix, kind=UPPER_UNITRIANGULAR):
    v = in_subgroup(matrix, MatrixGroup(kind))
    return {"value": v}, f"{matrix} {'in' if v else 'not in'} {kind}"


def op_matrix_order(ctx, matrix, bound=64):
    n = order_bounded(matrix, bound)
    return {"value": n}, f"order of {matrix}: {n if n else f'exceeds {bound}'}"


def op_symbolic_layers(ctx, n=6):
    layers = words.symbolic_layers(n)
    out = [[str(w) for w in sorted(L)] for L in layers]
    strict = all(layers[k] < layers[k + 1] for k in range(len(layers) - 1))
    summary = "; ".join(f"H^{k}={{{', '.join(L)}}}" for k, L in enumerate(out[:2], 1))
    return ({"value": out, "sizes": [len(L) for L in layers], "strict_growth": strict},
            f"{summary}; sizes {[len(L) for L in layers]}; strict growth {strict}")


def op_growth_certificate(ctx, n=6):
    c = words.growth_certificate(n)
    steps = [{"layer": s.layer, "y": str(s.y), "case": s.case, "first_argument": str(s.first_argument),
              "produced": str(s.produced), "ok": s.ok} for s in c.steps]
    text = ", ".join(f"k={s['layer']}: case {s['case']} gives {s['produced']}" for s in steps)
    return {"value": c.ok, "steps": steps, "matrices_distinct": c.matrices_distinct}, text


def op_layer_agreement(ctx, n=6):
    ok, sizes = layer_agreement(n)
    return {"value": ok, "sizes": sizes}, f"symbolic and matrix layers agree up to n={n}: {ok}; sizes {sizes}"


def layer_agreement(n: int) -> tuple[bool, list]:
    """Compare symbolic H^k(x,x) with the layers computed on exact matrices."""
    H = MatrixGroup.generated([words.H_MATRIX])
    carrier = act.Carrier(act.MATRIX_SET, (words.X_MATRIX,),
                          universe=lambda m: isinstance(m, Mat2) and m.det != 0, exhaustive=False)
    A = act.conjugation_action_I(H, carrier)
    L = orbits.orbit_layers(A, words.X_MATRIX, n)
    sym = words.symbolic_layers(n)
    ok = len(L.layers) >= n and all(
        frozenset(w.to_matrix() for w in sym[k]) == L.layers[k] and len(sym[k]) == len(L.layers[k])
        for k in range(n))
    return ok, [len(S) for S in L.layers[:n]]


def op_union_witness(ctx):
    found = orbits.find_union_violation(ctx.action, ctx.limits.max_depth)
    if found is None:
        return {"value": False, "witness": None}, "every union of two orbits is bi-invariant"
    S, T, w = found
    res = {"value": True, "first": ctx.render_set(S), "second": ctx.render_set(T), "witness": _witness(ctx, w)}
    wr = res["witness"]
    return res, (f"union of {{{', '.join(res['first'])}}} and {{{', '.join(res['second'])}}} is not "
                 f"bi-invariant: {wr['g']}({wr['a1']}, {wr['a2']}) = {wr['value']}")


def op_natural_square(ctx):
    U = act.natural_g_square(ctx.action)
    bad = act.verify_unary_axioms(U)
    return {"value": not bad, "violations": len(bad)}, f"natural G-square satisfies the action axioms: {not bad}"


OPS = {
    "verify_axioms": op_verify_axioms,
    "apply": op_apply,
    "image_set": op_image_set,
    "orbit": op_orbit,
    "classify_orbit": op_classify_orbit,
    "is_bi_invariant": op_is_bi_invariant,
    "orbits_intersect": op_orbits_intersect,
    "intersect_bi_invariant": op_intersect_bi_invariant,
    "check_distributive": op_check_distributive,
    "distributive_image_law": op_distributive_image_law,
    "normalizer_criterion": op_normalizer_criterion,
    "kernel_criterion": op_kernel_criterion,
    "problem1": op_problem1,
    "left_cosets": op_left_cosets,
    "normalizer": op_normalizer,
    "commutator_subgroup": op_commutator_subgroup,
    "conjugate": op_conjugate,
    "in_subgroup": op_in_subgroup,
    "matrix_order": op_matrix_order,
    "symbolic_layers": op_symbolic_layers,
    "growth_certificate": op_growth_certificate,
    "layer_agreement": op_layer_agreement,
    "union_witness": op_union_witness,
    "natural_square": op_natural_square,
}
