"""Instance checks of the multiplication-semimodule theorems.

Each :class:`TheoremSpec` pairs named hypotheses with a conclusion that is
checked on every structure meeting them. The theorems are proved results,
so a failing instance points at a bug in this library, never at the
mathematics.
"""
from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, Union

from .bits import SubsetHandle
from .core import (
    FiniteSemiring,
    is_entire,
    is_mult_idempotent,
    is_semidomain,
    is_yoked,
    mc_elements,
)
from .enumeration import enumerate_semimodules, enumerate_semirings
from .errors import SizeBoundExceeded, UnknownTheorem
from .homs import HOM_LIMIT, all_homs, dual_basis_certificate, generating_set, isomorphic_ideal_image
from .ideals import (
    all_ideals,
    ideal_product,
    is_yoked_and_subtractive,
    local_maximal_ideal,
    maximal_ideals,
    prime_ideals,
)
from .localization import QUOTIENT_LIMIT, is_invertible_ideal, localize_at_prime, total_quotient
from .semimodule import (
    FiniteSemimodule,
    all_subsemimodules,
    cyclic_subsemimodule,
    fixpoint_set,
    generates,
    ideal_as_module,
    ideal_products_with_module,
    ideal_times_module,
    is_cancellative,
    is_cyclic,
    is_faithful,
    is_mc_semimodule,
    is_multiplication,
    is_p_cyclic,
    is_torsionfree,
    multiplication_witness,
    residual,
    submodule,
    t_p_set,
    theta,
)

Structure = Union[FiniteSemiring, FiniteSemimodule]
Witness = dict


@dataclass(frozen=True)
class TheoremSpec:
    id: str
    title: str
    domain: str  # "semiring" or "semimodule"
    hypotheses: tuple[tuple[str, Callable], ...]
    conclusion: Callable  # (structure, universe) -> witness dict or None
    statement: str = ""


@dataclass
class TheoremReport:
    id: str
    verdict: str  # "pass" | "fail" | "vacuous"
    structures_checked: int
    structures_seen: int
    witness: Witness | None = None
    hypothesis_failures: dict[str, int] = field(default_factory=dict)
    elapsed: float = 0.0

    def line(self) -> str:
        text = f"{self.id:6s} {self.verdict.upper():8s} checked={self.structures_checked}/{self.structures_seen}"
        if self.verdict == "vacuous":
            text += " (no structure met the hypotheses)"
        if self.witness:
            text += f" witness={self.witness}"
        return text


# -- shared helpers -----------------------------------------------------------


def _set(h: SubsetHandle) -> list[int]:
    return list(h)


def nonzero(M):
    return M.order > 1


def hom_sized(M):
    return M.order <= HOM_LIMIT


def standing(M):
    """Yoked base, every maximal ideal subtractive, M additively cancellative."""
    return is_yoked_and_subtractive(M.base) and is_cancellative(M)


def fixpoint_full(M, p) -> bool:
    return fixpoint_set(M, p).members.bits == M.full.bits


def localization_cyclic(M, p) -> bool:
    return is_cyclic(localize_at_prime(M, p).as_semimodule())


def _pm(M, p) -> SubsetHandle:
    return ideal_times_module(p, M)


def _prime_avoidance(M):
    """a·x in pM forces a in p or x in pM, for every prime p."""
    S = M.base
    for p in prime_ideals(S):
        pm = _pm(M, p)
        for a in S.elements:
            if a in p:
                continue
            for x in M.elements:
                if M.action[a][x] in pm and x not in pm:
                    return {"module": M.name, "prime": _set(p), "a": a, "x": x}
    return None


def _generating_families(M) -> Iterable[tuple[int, ...]]:
    """All generating subsets when M is small, else the greedy one."""
    if M.order > 10:
        yield generating_set(M)
        return
    nonzero_elems = list(range(1, M.order))
    if not nonzero_elems:
        yield ()
        return
    for r in range(1, len(nonzero_elems) + 1):
        for fam in itertools.combinations(nonzero_elems, r):
            if generates(M, fam):
                yield fam


# -- conclusions ---------------------------------------------------------------


def _t23(M, universe):
    for N in universe:
        if not isinstance(N, FiniteSemimodule) or N.base is not M.base:
            continue
        for h in all_homs(M, N):
            image = submodule(N, h.image)
            if not is_multiplication(image):
                return {"source": M.name, "target": N.name, "map": list(h.map),
                        "surjective": h.is_surjective()}
    return None


def _e22(S, universe):
    ideals = all_ideals(S)
    for J in ideals:
        if not is_multiplication(ideal_as_module(S, J)):
            return {"semiring": S.name, "ideal": _set(J)}
        for I in ideals:
            if I <= J and ideal_product(S, I, J) != I:
                return {"semiring": S.name, "I": _set(I), "J": _set(J)}
    return None


def _t25(S, universe):
    mc = mc_elements(S).bits
    for I in all_ideals(S):
        invertible = is_invertible_ideal(S, I)
        mult = is_multiplication(ideal_as_module(S, I))
        has_mc = bool(I.bits & mc)
        if invertible != (mult and has_mc):
            return {"semiring": S.name, "ideal": _set(I), "invertible": invertible,
                    "multiplication": mult, "contains_mc": has_mc}
    return None


def _all_maximal_tp_or_cyclic(M):
    return all(t_p_set(M, p) == M.full or is_p_cyclic(M, p) for p in maximal_ideals(M.base))


def _mult_conclusion(M, universe):
    if not is_multiplication(M):
        bad = multiplication_witness(M)
        return {"module": M.name, "not_multiplication_at": None if bad is None else _set(bad)}
    return None


def _t27(M, universe):
    for p in maximal_ideals(M.base):
        if not (fixpoint_full(M, p) or is_p_cyclic(M, p)):
            return {"module": M.name, "maximal": _set(p)}
    return None


def _c28_hyp(M):
    m = local_maximal_ideal(M.base)
    return m is not None and _pm(M, m) != M.full


def _c28(M, universe):
    return None if is_cyclic(M) else {"module": M.name}


def _some_maximal_nondegenerate(M):
    return any(_pm(M, p) != M.full for p in maximal_ideals(M.base))


def _t210(M, universe):
    for p in maximal_ideals(M.base):
        if _pm(M, p) != M.full and not localization_cyclic(M, p):
            return {"module": M.name, "maximal": _set(p)}
    return None


def _all_localizations_cyclic(M):
    return all(localization_cyclic(M, p) for p in maximal_ideals(M.base))


def _mc_conclusion(M, universe):
    return None if is_mc_semimodule(M) else {"module": M.name}


def _torsionfree(M):
    return is_semidomain(M.base) and is_torsionfree(M)


def _t34(M, universe):
    return _prime_avoidance(M)


def _l35(M, universe):
    if ideal_times_module(theta(M), M) != M.full:
        return {"module": M.name, "theta": _set(theta(M))}
    return None


def finite_generation_witness(M):
    """Elements m_i and r_i in (Sm_i : M) with sum r_i = 1, or ``None``.

    Built by a reachability pass over partial sums, one residual per element.
    """
    S = M.base
    reach = {0: ()}
    for x in M.elements:
        r_x = residual(cyclic_subsemimodule(M, x), M.full, M)
        nxt = dict(reach)
        for total, used in reach.items():
            for r in r_x:
                if r == 0:
                    continue
                t = S.add[total][r]
                if t not in nxt:
                    nxt[t] = used + ((x, r),)
        reach = nxt
    return reach.get(S.one)


def _t36(M, universe):
    S = M.base
    ideals = all_ideals(S)
    products = {I: ideal_times_module(I, M) for I in ideals}
    for I, J in itertools.product(ideals, repeat=2):
        if products[I] <= products[J] and not I <= J:
            return {"module": M.name, "part": 1, "I": _set(I), "J": _set(J)}
        if products[I] == products[J] and I != J:
            return {"module": M.name, "part": "cancellation", "I": _set(I), "J": _set(J)}
    for I in ideals:
        if I != S.full and products[I] == M.full:
            return {"module": M.name, "part": 2, "I": _set(I)}
    decomposition = finite_generation_witness(M)
    if decomposition is None or not generates(M, [m for m, _ in decomposition]):
        return {"module": M.name, "part": 3}
    return None


def _t38(M, universe):
    return None if is_torsionfree(M) else {"module": M.name}


def _t39(M, universe):
    if dual_basis_certificate(M, M.order) is None:
        return {"module": M.name, "bound": M.order}
    return None


def _t311(M, universe):
    image = isomorphic_ideal_image(M)
    if image is None or not image.invertible:
        return {"module": M.name, "image": image and _set(image.ideal)}
    return None


def _t41(M, universe):
    local = all(is_p_cyclic(M, p) or fixpoint_full(M, p) for p in maximal_ideals(M.base))
    if is_multiplication(M) != local:
        return {"module": M.name, "multiplication": is_multiplication(M), "local_criterion": local}
    return None


def _l42(M, universe):
    for p in maximal_ideals(M.base):
        if not fixpoint_set(M, p).is_subsemimodule:
            return {"module": M.name, "maximal": _set(p), "set": _set(fixpoint_set(M, p).members)}
    return None


def _t43(M, universe):
    products = ideal_products_with_module(M)
    mult = is_multiplication(M)
    for fam in _generating_families(M):
        criterion = all(cyclic_subsemimodule(M, g).bits in products for g in fam)
        if mult != criterion:
            return {"module": M.name, "generators": list(fam), "multiplication": mult}
    return None


def theorem_44_items(M) -> dict[str, bool]:
    """Items (2)-(5); item (1), finite generation, holds for every finite M."""
    S = M.base
    ideals = all_ideals(S)
    products = {I: ideal_times_module(I, M) for I in ideals}
    by_product = ideal_products_with_module(M)
    return {
        "1": True,
        "2": all(products[p] != M.full for p in maximal_ideals(S)),
        "3": all(I <= J for I, J in itertools.product(ideals, repeat=2) if products[I] <= products[J]),
        "4": all(len(by_product.get(N.bits, ())) == 1 for N in all_subsemimodules(M)),
        "5": all(products[I] != M.full for I in ideals if I != S.full),
    }


def _t44(M, universe):
    items = theorem_44_items(M)
    if not all(items.values()):
        return {"module": M.name, "items": items}
    return None


def _t45(M, universe):
    return _prime_avoidance(M)


def _base(pred):
    return lambda M: pred(M.base)


_REGISTRY = (
    TheoremSpec("T2.3", "homomorphic images", "semimodule",
                (("multiplication", is_multiplication), ("hom-size-bound", hom_sized)), _t23,
                "every hom image of a multiplication semimodule is a multiplication semimodule"),
    TheoremSpec("E2.2", "mult-idempotent base", "semiring",
                (("mult-idempotent", is_mult_idempotent),), _e22,
                "every ideal is a multiplication semimodule and I ⊆ J implies I = IJ"),
    TheoremSpec("T2.5", "invertible ideals", "semiring",
                (("quotient-size-bound", lambda S: total_quotient(S).order <= QUOTIENT_LIMIT),), _t25,
                "I invertible iff I is multiplication and meets MC(S)"),
    TheoremSpec("T2.6", "local criterion, sufficiency", "semimodule",
                (("Tp=M-or-p-cyclic", _all_maximal_tp_or_cyclic),), _mult_conclusion,
                "T_p(M) = M or M p-cyclic at every maximal p implies multiplication"),
    TheoremSpec("T2.7", "local criterion, necessity", "semimodule",
                (("multiplication", is_multiplication),), _t27,
                "multiplication implies fixpoint set = M or p-cyclic at every maximal p"),
    TheoremSpec("C2.8", "local base", "semimodule",
                (("multiplication", is_multiplication), ("local-base-and-M!=mM", _c28_hyp)), _c28,
                "over a local base, multiplication with M != mM implies cyclic"),
    TheoremSpec("T2.10", "localizations cyclic", "semimodule",
                (("multiplication", is_multiplication), ("some-M!=pM", _some_maximal_nondegenerate)), _t210,
                "multiplication and M != pM imply M_p cyclic"),
    TheoremSpec("T2.11", "cyclic localizations", "semimodule",
                (("all-Mp-cyclic", _all_localizations_cyclic),), _mult_conclusion,
                "M_p cyclic at every maximal p implies multiplication"),
    TheoremSpec("L3.1", "cancellative faithful implies MC", "semimodule",
                (("yoked-base", _base(is_yoked)), ("entire-base", _base(is_entire)),
                 ("cancellative", is_cancellative), ("faithful", is_faithful),
                 ("multiplication", is_multiplication)), _mc_conclusion,
                "yoked entire base, cancellative faithful multiplication implies MC"),
    TheoremSpec("T3.3", "torsionfree implies MC", "semimodule",
                (("yoked-base", _base(is_yoked)), ("semidomain-base", _base(is_semidomain)),
                 ("cancellative", is_cancellative), ("torsionfree", _torsionfree)), _mc_conclusion,
                "yoked semidomain base, cancellative torsionfree implies MC"),
    TheoremSpec("T3.4", "prime avoidance (MC)", "semimodule",
                (("mc", is_mc_semimodule), ("multiplication", is_multiplication), ("nonzero", nonzero)), _t34,
                "ax in pM implies a in p or x in pM"),
    TheoremSpec("L3.5", "theta", "semimodule",
                (("multiplication", is_multiplication),), _l35,
                "M = theta(M)M"),
    TheoremSpec("T3.6", "MC multiplication", "semimodule",
                (("mc", is_mc_semimodule), ("multiplication", is_multiplication), ("nonzero", nonzero)), _t36,
                "IM ⊆ JM implies I ⊆ J; M != IM for proper I; finitely generated; cancellation"),
    TheoremSpec("T3.8", "MC multiplication is torsionfree", "semimodule",
                (("semidomain-base", _base(is_semidomain)), ("mc", is_mc_semimodule),
                 ("multiplication", is_multiplication)), _t38,
                "over a semidomain, MC multiplication implies torsionfree"),
    TheoremSpec("T3.9", "projective", "semimodule",
                (("mc", is_mc_semimodule), ("multiplication", is_multiplication), ("hom-size-bound", hom_sized)), _t39,
                "MC multiplication has a dual basis"),
    TheoremSpec("T3.11", "isomorphic to an invertible ideal", "semimodule",
                (("semidomain-base", _base(is_semidomain)), ("mc", is_mc_semimodule),
                 ("multiplication", is_multiplication), ("nonzero", nonzero), ("hom-size-bound", hom_sized)), _t311,
                "M is isomorphic to an invertible ideal"),
    TheoremSpec("T4.1", "local criterion (standing hypotheses)", "semimodule",
                (("standing", standing),), _t41,
                "multiplication iff p-cyclic or fixpoint set = M at every maximal p"),
    TheoremSpec("L4.2", "fixpoint set closed", "semimodule",
                (("standing", standing),), _l42,
                "{m : m = qm, q in p} is a subsemimodule"),
    TheoremSpec("T4.3", "generator criterion", "semimodule",
                (("standing", standing),), _t43,
                "multiplication iff each generator's cyclic subsemimodule is IM for some I"),
    TheoremSpec("T4.4", "faithful multiplication equivalences", "semimodule",
                (("standing", standing), ("faithful", is_faithful), ("multiplication", is_multiplication)), _t44,
                "items (2)-(5) hold (item (1) is automatic for finite M)"),
    TheoremSpec("T4.5", "prime avoidance (faithful)", "semimodule",
                (("standing", standing), ("faithful", is_faithful), ("multiplication", is_multiplication)), _t45,
                "ax in pM implies a in p or x in pM"),
)

_BY_ID = {t.id: t for t in _REGISTRY}

ANTI_VACUITY = ("T2.6", "T2.7", "L3.5", "T3.6", "T4.1", "L4.2", "T4.4")


def registry() -> list[TheoremSpec]:
    return list(_REGISTRY)


def get_theorem(theorem_id: str) -> TheoremSpec:
    try:
        return _BY_ID[theorem_id]
    except KeyError:
        raise UnknownTheorem(theorem_id) from None


def _domain(spec: TheoremSpec, structures: Sequence[Structure]) -> list[Structure]:
    kind = FiniteSemiring if spec.domain == "semiring" else FiniteSemimodule
    return [X for X in structures if isinstance(X, kind)]


def check(theorem_id: str, structures: Iterable[Structure]) -> TheoremReport:
    """Evaluate one theorem over ``structures``.

    The verdict is ``fail`` at the first structure whose conclusion fails,
    ``vacuous`` if no structure met the hypotheses, otherwise ``pass``.
    """
    spec = get_theorem(theorem_id)
    universe = list(structures)
    domain = _domain(spec, universe)
    start = time.perf_counter()
    tallies: dict[str, int] = {}
    checked = 0
    witness = None
    for X in domain:
        failed = next((name for name, pred in spec.hypotheses if not pred(X)), None)
        if failed:
            tallies[failed] = tallies.get(failed, 0) + 1
            continue
        checked += 1
        witness = spec.conclusion(X, universe)
        if witness is not None:
            break
    verdict = "fail" if witness is not None else ("pass" if checked else "vacuous")
    return TheoremReport(theorem_id, verdict, checked, len(domain), witness, tallies,
                         time.perf_counter() - start)


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("SEMIRING_LAB_THREADS", "1")))
    except ValueError:
        return 1


def check_all(structures: Iterable[Structure], ids: Sequence[str] | None = None,
              workers: int | None = None) -> list[TheoremReport]:
    """Run several theorems; reports come back in registry order whatever the worker count."""
    universe = list(structures)
    ids = list(ids) if ids else [t.id for t in _REGISTRY]
    for i in ids:
        get_theorem(i)
    workers = workers or worker_count()
    if workers == 1:
        return [check(i, universe) for i in ids]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda i: check(i, universe), ids))


# -- exhaustive search ---------------------------------------------------------


@dataclass
class SearchResult:
    id: str
    outcome: str  # "witness" | "exhausted"
    witness: Witness | None
    structures_checked: int
    structures_seen: int
    elapsed: float

    def line(self) -> str:
        text = f"{self.id:6s} {self.outcome.upper():9s} checked={self.structures_checked}/{self.structures_seen}"
        if self.witness:
            text += f" witness={self.witness}"
        return text


def census(max_order: int) -> list[Structure]:
    """Every semiring of order 2..max_order and each one's semimodules of order 1..max_order, up to isomorphism."""
    if max_order < 2:
        raise SizeBoundExceeded("max order must be at least 2")
    out: list[Structure] = []
    for n in range(2, max_order + 1):
        for S in enumerate_semirings(n, up_to_iso=True):
            out.append(S)
            for m in range(1, max_order + 1):
                out.extend(enumerate_semimodules(S, m, up_to_iso=True))
    return out


def search_counterexample(theorem_id: str, max_order: int,
                          structures: Sequence[Structure] | None = None) -> SearchResult:
    """Check a theorem or probe over the exhaustive census up to ``max_order``.

    ``witness`` for a registry theorem means a library bug; for a probe it is
    the example being looked for.
    """
    if theorem_id in _PROBES:
        spec = _PROBES[theorem_id]
    else:
        spec = get_theorem(theorem_id)
    universe = list(structures) if structures is not None else census(max_order)
    start = time.perf_counter()
    domain = _domain(spec, universe)
    checked = 0
    for X in domain:
        if not all(pred(X) for _, pred in spec.hypotheses):
            continue
        checked += 1
        witness = spec.conclusion(X, universe)
        if witness is not None:
            return SearchResult(theorem_id, "witness", witness, checked, len(domain),
                                time.perf_counter() - start)
    return SearchResult(theorem_id, "exhausted", None, checked, len(domain),
                        time.perf_counter() - start)


# -- converse probes: the "conclusion" reports an instance of the sought example


def _report_instance(M, universe):
    return {"module": M.name, "base": M.base.name}


def _tp_differs(M, universe):
    for p in maximal_ideals(M.base):
        if t_p_set(M, p) != fixpoint_set(M, p).members:
            return {"module": M.name, "maximal": _set(p), "T_p": _set(t_p_set(M, p)),
                    "fixpoints": _set(fixpoint_set(M, p).members)}
    return None


def _neither_tp_nor_cyclic(M):
    return not _all_maximal_tp_or_cyclic(M)


_PROBES = {
    p.id: p
    for p in (
        TheoremSpec("X-MULT-NOT-IDEMP", "multiplication over a non-idempotent base", "semimodule",
                    (("multiplication", is_multiplication),
                     ("base-not-mult-idempotent", lambda M: not is_mult_idempotent(M.base))),
                    _report_instance),
        TheoremSpec("X-MULT-NOT-T26", "multiplication without the T2.6 hypothesis", "semimodule",
                    (("multiplication", is_multiplication), ("fails-T2.6-hypothesis", _neither_tp_nor_cyclic)),
                    _report_instance),
        TheoremSpec("X-TP-VS-FIX", "T_p(M) differs from the fixpoint set", "semimodule",
                    (), _tp_differs),
    )
}


def probes() -> list[TheoremSpec]:
    return list(_PROBES.values())
