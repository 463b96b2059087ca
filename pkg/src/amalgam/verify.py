"""Per-statement verification over algebras and constructions, plus the corpus driver."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, NamedTuple

from .algebra import AlgebraError, FiniteAlgebra, find_identity, is_commutative, is_square_dense
from .cohomology import (
    DecompositionMismatch,
    LiftError,
    Derivation,
    cyclic_derivations,
    decompose_derivation_id_amalgam,
    decompose_derivation_lau,
    derivation_dim_by_rank,
    derivation_space,
    h1_dual,
    h1c_dim,
    inner_derivations_are_cyclic,
    inner_dim_by_rank,
    is_cyclically_amenable,
    is_weakly_amenable,
    lift_derivation,
    lift_is_injective_on_h1,
    theorem_embedding_lau_check,
    unflatten,
    weak_amenability_amalgam_checks,
)
from .corpus import load_corpus
from .constructions import (
    AmalgamResult,
    ConstructionMismatch,
    amalgam_product_direct,
    cartesian,
    id_amalgam,
    identity_by_characterization,
    lau_product,
    quotient_by_I,
    unitize,
    verify_commutativity_characterization,
)
from .duality import (
    ArensIrregularity,
    amalgam_centre_decomposition,
    amalgam_dual_actions_check,
    amalgam_dual_pairing,
    bidual_amalgam_check,
    dual_bimodule,
    dual_norm,
    dual_norm_by_enumeration,
    topological_centres,
)
from .linalg import unit
from .structure import (
    HypothesisViolation,
    IncompleteSpectrum,
    amalgam_characters,
    characters,
    is_amenable,
    is_semisimple,
    radical,
    radical_by_characters,
    radical_decomposition_check,
)

PASS, FAIL, NOT_MET = "pass", "fail", "hypothesis-not-met"
DEFAULT_BUDGET = 12


class UnknownTheoremId(KeyError):
    pass


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, frozenset):
        return sorted(_jsonable(v) for v in x)
    return x


@dataclass(frozen=True)
class VerificationReport:
    theorem_id: str
    instance: str
    status: str
    details: dict = field(default_factory=dict)

    def to_json(self) -> str:
        doc = {
            "theorem_id": self.theorem_id,
            "instance": self.instance,
            "status": self.status,
            "details": _jsonable(self.details),
        }
        return json.dumps(doc, sort_keys=True)


class Statement(NamedTuple):
    theorem_id: str
    statement: str
    check: Callable


class _NotMet(Exception):
    pass


def _amalgam(inst) -> AmalgamResult:
    if not isinstance(inst, AmalgamResult):
        raise _NotMet("instance is a plain algebra, not a construction")
    return inst


def _algebra(inst) -> FiniteAlgebra:
    return inst.algebra if isinstance(inst, AmalgamResult) else inst


def _lau(inst) -> AmalgamResult:
    r = _amalgam(inst)
    if r.kind != "lau":
        raise _NotMet("instance is not a Lau product")
    return r


def _verdict(ok, witness=None, **extra) -> tuple:
    if ok:
        return PASS, extra
    return FAIL, {"witness": witness, **extra}


# ---------------------------------------------------------------------------
# checks; each returns (status, details) or raises _NotMet


def check_prod_formula(inst):
    r = _amalgam(inst)
    C = r.algebra
    for x in range(C.dim):
        for y in range(C.dim):
            ex, ey = unit(C.dim, x), unit(C.dim, y)
            if tuple(C.table[x][y]) != amalgam_product_direct(r, ex, ey):
                return _verdict(False, [C.labels[x], C.labels[y]])
    return _verdict(True, pairs=C.dim * C.dim)


def check_quotient(inst):
    r = _amalgam(inst)
    try:
        q, iso = quotient_by_I(r)
    except ConstructionMismatch as e:
        return _verdict(False, str(e))
    return _verdict(True, quotient_dim=q.dim)


def check_identity(inst):
    r = _amalgam(inst)
    e = find_identity(r.algebra)
    found = None if e is None else list(e.coords)
    predicted = identity_by_characterization(r)
    predicted = None if predicted is None else list(predicted)
    return _verdict(found == predicted, {"brute_force": found, "characterization": predicted}, identity=found)


def check_commutativity(inst):
    r = _amalgam(inst)
    v = verify_commutativity_characterization(r)
    lhs, rhs = v.witness
    w = None
    if not v.ok:
        w = {"brute_force": lhs, "characterization": rhs, "pair": is_commutative(r.algebra).witness}
    return _verdict(v.ok, w, commutative=lhs)


def check_amenability(inst):
    r = _amalgam(inst)
    whole = is_amenable(r.algebra)
    a, i = is_amenable(r.A), is_amenable(r.I_algebra)
    return _verdict(whole == (a and i), {"amalgam": whole, "A": a, "I": i}, amenable=whole)


def _sample_functionals(r: AmalgamResult) -> list:
    """Basis functionals, weighted sign patterns and a few fixed rational mixes."""
    n, m = r.n_A, r.n_I
    N = n + m
    out = [unit(N, k) for k in range(N)]
    out.append(tuple(Fraction((-1) ** k * (k + 1), k + 2) for k in range(N)))
    out.append(tuple(Fraction(k % 3 - 1, 1) * r.algebra.weights[k] for k in range(N)))
    out.append(tuple(Fraction(7, 3) if k == N - 1 else Fraction(-1, 5) for k in range(N)))
    return out


def check_dual_pairing(inst):
    r = _amalgam(inst)
    C = r.algebra
    for fg in _sample_functionals(r):
        f, g = r.split(fg)
        whole = dual_norm(C, fg)
        parts = max(dual_norm(r.A, f), dual_norm(r.I_algebra, g))
        if whole != parts or whole != dual_norm_by_enumeration(C, fg):
            return _verdict(False, {"functional": fg, "norm": whole, "max_of_parts": parts})
        for k in range(C.dim):
            ek = unit(C.dim, k)
            if amalgam_dual_pairing(r, ek, f, g) != fg[k]:
                return _verdict(False, {"functional": fg, "basis": C.labels[k]})
    return _verdict(True, functionals=len(_sample_functionals(r)))


def check_dual_actions(inst):
    v = amalgam_dual_actions_check(_amalgam(inst))
    return _verdict(v.ok, v.witness)


def check_bidual(inst):
    v = bidual_amalgam_check(_amalgam(inst))
    return _verdict(v.ok, v.witness)


def check_topological_centre(inst):
    a = _algebra(inst)
    try:
        left, right = topological_centres(a, require_full=True)
    except ArensIrregularity as e:
        return _verdict(False, str(e))
    if isinstance(inst, AmalgamResult):
        v = amalgam_centre_decomposition(inst)
        if not v.ok:
            return _verdict(False, {"centre_dims": v.witness})
    return _verdict(True, centre_dim=left.dim)


def check_characters(inst):
    r = _amalgam(inst)
    try:
        predicted = amalgam_characters(r)
    except (HypothesisViolation, IncompleteSpectrum) as e:
        raise _NotMet(str(e)) from None
    brute = characters(r.algebra)
    if not brute.complete:
        return _verdict(False, {"obstruction": brute.obstruction})
    ps, bs = predicted.coord_set(), brute.coord_set()
    return _verdict(
        ps == bs,
        {"only_predicted": ps - bs, "only_brute_force": bs - ps},
        count=len(bs),
    )


def check_lau_characters(inst):
    r = _lau(inst)
    phi = tuple(r.meta["phi"])
    sa, sb = characters(r.A), characters(r.I_algebra)
    if not (sa.complete and sb.complete):
        raise _NotMet(sa.obstruction or sb.obstruction)
    expected = {c.coords + (0,) * r.n_I for c in sa.characters}
    expected |= {phi + c.coords for c in sb.characters}
    expected = frozenset(tuple(Fraction(x) for x in v) for v in expected)
    brute = characters(r.algebra)
    bs = brute.coord_set()
    return _verdict(
        brute.complete and expected == bs,
        {"only_expected": expected - bs, "only_brute_force": bs - expected},
        count=len(bs),
    )


def _radical_hypotheses(r: AmalgamResult) -> None:
    try:
        radical_decomposition_check(r)
    except HypothesisViolation as e:
        raise _NotMet(str(e)) from None


def check_radical(inst):
    r = _amalgam(inst)
    try:
        ok = radical_decomposition_check(r)
    except HypothesisViolation as e:
        raise _NotMet(str(e)) from None
    whole = radical(r.algebra)
    if not ok:
        return _verdict(False, {"radical_basis": whole.basis})
    if characters(r.algebra).complete and radical_by_characters(r.algebra) != whole:
        return _verdict(False, {"radical_basis": whole.basis, "kernel_intersection": radical_by_characters(r.algebra).basis})
    return _verdict(True, radical_dim=whole.dim)


def check_semisimple(inst):
    r = _amalgam(inst)
    _radical_hypotheses(r)
    whole = is_semisimple(r.algebra)
    a, i = is_semisimple(r.A), is_semisimple(r.I_algebra)
    return _verdict(whole == (a and i), {"amalgam": whole, "A": a, "I": i}, semisimple=whole)


def _wa(key: str, witness_fn):
    def check(inst):
        r = _amalgam(inst)
        status = weak_amenability_amalgam_checks(r)[key]
        if status == "not-applicable":
            raise _NotMet(f"{key} does not apply")
        return _verdict(status == "pass", witness_fn(r))

    return check


def _wa_flags(r: AmalgamResult) -> dict:
    return {
        "amalgam": is_weakly_amenable(r.algebra),
        "A": is_weakly_amenable(r.A),
        "I": is_weakly_amenable(r.I_algebra),
    }


def check_wa_lift(inst):
    """Lifts of derivations stay derivations, keep innerness, and inject on cohomology."""
    r = _amalgam(inst)
    A = r.A
    XA = dual_bimodule(A)
    for k, v in enumerate(derivation_space(A, XA).basis):
        try:
            lift_derivation(r, Derivation(A, XA, unflatten(v, A.dim, A.dim)))
        except LiftError as e:
            return _verdict(False, {"derivation": k, "error": str(e)})
    if not lift_is_injective_on_h1(r):
        return _verdict(False, "lifted cohomology classes became dependent")
    status = weak_amenability_amalgam_checks(r)["necessity-A"]
    if status == "fail":
        return _verdict(False, _wa_flags(r))
    return _verdict(True, h1_A=h1_dual(A).h1_dim)


def check_h1_doubling(inst, budget: int = DEFAULT_BUDGET):
    a = inst.A if isinstance(inst, AmalgamResult) and inst.kind == "id" else _algebra(inst)
    if not is_square_dense(a):
        raise _NotMet("A^2 does not span A")
    if 2 * a.dim > budget:
        raise _NotMet(f"A ⋈^id A has dimension {2 * a.dim}, above the budget {budget}")
    C = id_amalgam(a).algebra
    single, double = h1_dual(a), h1_dual(C)
    for alg, rep in ((a, single), (C, double)):
        X = dual_bimodule(alg)
        z, b = derivation_dim_by_rank(alg, X), inner_dim_by_rank(alg, X)
        if (z, b) != (rep.z1_dim, rep.b1_dim):
            return _verdict(False, {"solver": [rep.z1_dim, rep.b1_dim], "rank_oracle": [z, b]})
    return _verdict(
        double.h1_dim == 2 * single.h1_dim,
        {"h1_A": single.h1_dim, "h1_amalgam": double.h1_dim},
        h1_A=single.h1_dim,
        h1_amalgam=double.h1_dim,
    )


def check_wa_id(inst):
    r = _amalgam(inst)
    if r.kind != "id":
        raise _NotMet("instance is not of the form A ⋈^id A")
    status = weak_amenability_amalgam_checks(r)["id-iff"]
    if status == "fail":
        return _verdict(False, _wa_flags(r))
    if is_square_dense(r.A):
        C = r.algebra
        XC = dual_bimodule(C)
        for k, v in enumerate(derivation_space(C, XC).basis):
            try:
                decompose_derivation_id_amalgam(r, Derivation(C, XC, unflatten(v, C.dim, C.dim)))
            except DecompositionMismatch as e:
                return _verdict(False, {"derivation": k, "error": str(e)})
    return _verdict(True, weakly_amenable=is_weakly_amenable(r.algebra))


def check_lau_embedding(inst):
    r = _lau(inst)
    B = r.I_algebra
    ok = theorem_embedding_lau_check(r.A, B, r.meta["phi"])
    dims = {"h1": h1_dual(r.algebra).h1_dim, "h1_A": h1_dual(r.A).h1_dim, "h1c_B": h1c_dim(B)}
    if not ok:
        return _verdict(False, dims)
    if not inner_derivations_are_cyclic(B):
        return _verdict(False, "an inner derivation of B is not cyclic")
    if not cyclic_derivations(B).issubset(derivation_space(B, dual_bimodule(B))):
        return _verdict(False, "a cyclic derivation is not a derivation")
    if is_square_dense(B):
        C = r.algebra
        XC = dual_bimodule(C)
        for k, v in enumerate(derivation_space(C, XC).basis):
            try:
                decompose_derivation_lau(r, Derivation(C, XC, unflatten(v, C.dim, C.dim)))
            except DecompositionMismatch as e:
                return _verdict(False, {"derivation": k, "error": str(e), **dims})
    return PASS, dims


def check_lau_corollary(inst):
    r = _lau(inst)
    if not is_weakly_amenable(r.algebra):
        raise _NotMet("the Lau product is not weakly amenable")
    a, b = is_weakly_amenable(r.A), is_cyclically_amenable(r.I_algebra)
    return _verdict(a and b, {"A_weakly_amenable": a, "B_cyclically_amenable": b})


REGISTRY = {
    s.theorem_id: s
    for s in [
        Statement("prod-formula", "(a,i)(a',i') = (aa', theta(a)i' + i theta(a') + ii')", check_prod_formula),
        Statement("prop-basic-i", "(A ⋈ I)/I is isomorphic to A via the projection", check_quotient),
        Statement("prop-basic-ii", "identity of A ⋈ I predicted from A, theta and I", check_identity),
        Statement("prop-basic-iii", "A ⋈ I commutative iff A and theta(A)+I commutative", check_commutativity),
        Statement("prop-basic-vi", "A ⋈ I amenable iff A and I amenable", check_amenability),
        Statement("dual-pairing", "||(f,g)|| = max(||f||, ||g||) and <(a,i),(f,g)> = f(a) + g(i)", check_dual_pairing),
        Statement("dual-actions", "closed forms of (f,g).(a,i) and (a,i).(f,g)", check_dual_actions),
        Statement("bidual-amalgam", "both Arens products of (A ⋈ I)** in block form", check_bidual),
        Statement("topological-centre", "Z1 = Z2 = whole bidual, with block decomposition", check_topological_centre),
        Statement("characters-EuF", "sigma(A ⋈ I) = E ∪ F", check_characters),
        Statement("lau-characters", "sigma(A (+)_phi B) = (sigma(A) x {0}) ∪ ({phi} x sigma(B))", check_lau_characters),
        Statement("radical-decomp", "rad(A ⋈ I) = rad A (+) rad I", check_radical),
        Statement("semisimple-iff", "A ⋈ I semisimple iff A and I semisimple", check_semisimple),
        Statement(
            "wa-commutative-iff",
            "commutative A ⋈ I weakly amenable iff A and I are",
            _wa("commutative-iff", _wa_flags),
        ),
        Statement("wa-sufficient", "A and I weakly amenable implies A ⋈ I weakly amenable", _wa("sufficiency", _wa_flags)),
        Statement("wa-lift", "D -> (D(a), 0) injects H1(A, A*) and A ⋈ I weakly amenable implies A is", check_wa_lift),
        Statement("h1-doubling", "dim H1(A ⋈^id A) = 2 dim H1(A, A*) when A^2 = A", check_h1_doubling),
        Statement("wa-id-iff", "A ⋈^id A weakly amenable iff A is", check_wa_id),
        Statement("lau-embedding", "dim H1(A (+)_phi B) >= dim H1(A) + dim H1_c(B)", check_lau_embedding),
        Statement(
            "lau-corollary",
            "A (+)_phi B weakly amenable implies A weakly amenable and B cyclically amenable",
            check_lau_corollary,
        ),
    ]
}


def verify(theorem_id: str, inst, name: str, budget: int = DEFAULT_BUDGET) -> VerificationReport:
    try:
        stmt = REGISTRY[theorem_id]
    except KeyError:
        raise UnknownTheoremId(theorem_id) from None
    try:
        if theorem_id == "h1-doubling":
            status, details = stmt.check(inst, budget)
        else:
            status, details = stmt.check(inst)
    except _NotMet as e:
        return VerificationReport(theorem_id, name, NOT_MET, {"reason": str(e)})
    except AlgebraError as e:
        return VerificationReport(theorem_id, name, FAIL, {"witness": f"{type(e).__name__}: {e}"})
    return VerificationReport(theorem_id, name, status, details)


def verify_all(inst, name: str, budget: int = DEFAULT_BUDGET) -> list:
    return [verify(t, inst, name, budget) for t in sorted(REGISTRY)]


# ---------------------------------------------------------------------------
# corpus driver


def generated_instances(bases: dict, budget: int = DEFAULT_BUDGET) -> dict:
    """Constructions over every base algebra and ordered pair that fit within ``budget``."""
    out = {}
    names = sorted(bases)
    for a in names:
        A = bases[a]
        if 2 * A.dim <= budget:
            out[f"id({a})"] = lambda A=A: id_amalgam(A)
        if A.dim + 1 <= budget:
            out[f"unitize({a})"] = lambda A=A: unitize(A)
    for a in names:
        A = bases[a]
        spec = characters(A)
        for b in names:
            B = bases[b]
            if A.dim + B.dim > budget:
                continue
            out[f"cartesian({a},{b})"] = lambda A=A, B=B: cartesian(A, B)
            for phi in spec.characters:
                tag = ",".join(str(x) for x in phi.coords)
                out[f"lau({a},{b};phi={tag})"] = lambda A=A, B=B, p=phi.coords: lau_product(A, B, p)
    return out


@dataclass
class CorpusRun:
    reports: list
    errors: list  # (instance, message)

    def counts(self) -> dict:
        out = {PASS: 0, FAIL: 0, NOT_MET: 0}
        for r in self.reports:
            out[r.status] += 1
        return out

    @property
    def exit_code(self) -> int:
        if self.counts()[FAIL]:
            return 1
        return 2 if self.errors else 0

    def json_lines(self) -> str:
        lines = [r.to_json() for r in self.reports]
        lines += [json.dumps({"instance": n, "status": "error", "error": m}, sort_keys=True) for n, m in self.errors]
        lines.append(json.dumps({"summary": self.counts(), "errors": len(self.errors)}, sort_keys=True))
        return "\n".join(lines) + "\n"


def corpus_run(directory=None, budget: int = DEFAULT_BUDGET) -> CorpusRun:
    loaded, errors = load_corpus(directory)
    instances = {}
    bases = {}
    for item in loaded:
        if item.algebra.dim > budget:
            continue
        instances[item.entry.name] = lambda inst=item.instance: inst
        if isinstance(item.instance, FiniteAlgebra):
            bases[item.entry.name] = item.instance
    for name, make in generated_instances(bases, budget).items():
        instances.setdefault(name, make)
    reports = []
    for name in sorted(instances):
        try:
            inst = instances[name]()
        except AlgebraError as e:
            errors.append((name, f"{type(e).__name__}: {e}"))
            continue
        if _algebra(inst).dim > budget:
            continue
        reports.extend(verify_all(inst, name, budget))
    reports.sort(key=lambda r: (r.theorem_id, r.instance))
    errors.sort()
    return CorpusRun(reports, errors)
