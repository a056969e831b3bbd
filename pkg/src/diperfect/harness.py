"""Small-order verification harness.

Decides the alpha- and BE-properties exactly, surveys both
characterization conjectures over all digraphs up to a given order, and
stress-tests every constructive builder on generated class members.
All randomness is seeded and all iteration orders are deterministic, so
reports are reproducible byte for byte.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .core import Digraph, canonical_form, underlying_graph
from .errors import (
    BudgetExceeded,
    NotInClassB,
    NotInClassD,
    NotPerfect,
    SharedEndvertex,
    TooLarge,
    UnknownClass,
)
from .oracles import (
    PathPartition,
    alpha_of,
    exists_s_path_partition,
    is_perfect,
    max_stable_sets,
    min_clique_partition,
    validate_partition,
)
from .forbidden import (
    in_class_b,
    in_class_d,
    is_in_semicomplete,
    is_semicomplete,
    is_series_parallel,
    find_induced_transitive_triangle,
)
from . import constructive

PROPERTY_CAP = 10
DIPERFECT_CAP = 9
ENUMERATE_CAP = 6

VALID_CLASSES = (
    "perfect",
    "series_parallel",
    "in_semicomplete",
    "semi_symmetric",
    "semicomplete",
    "cycle",
)


def serialize_digraph(D: Digraph) -> str:
    """Canonical one-line text form: n followed by the sorted arc list."""
    return f"{D.n}:" + ",".join(f"{u}>{v}" for u, v in D.sorted_arcs())


def deserialize_digraph(text: str) -> Digraph:
    head, _, rest = text.partition(":")
    arcs = []
    if rest:
        for token in rest.split(","):
            u, _, v = token.partition(">")
            arcs.append((int(u), int(v)))
    return Digraph(int(head), arcs)


# -- property reports -------------------------------------------------------


@dataclass(frozen=True)
class PropertyReport:
    digraph: str
    property: str  # "alpha" | "be"
    holds: bool
    failing_stable_set: tuple[int, ...] | None = None
    certificates: tuple[tuple[tuple[int, ...], PathPartition], ...] = ()
    failing_vertices: tuple[int, ...] | None = None


@dataclass(frozen=True)
class SurveyReport:
    n_max: int
    mode: str
    counts: tuple[tuple[str, int], ...]
    counterexamples: tuple[str, ...]
    stats: tuple[tuple[str, int], ...]


def _mode_key(mode: str) -> str:
    if mode not in ("alpha", "be"):
        raise ValueError(f"mode must be alpha or be, got {mode!r}")
    return mode


def check_property(D: Digraph, mode: str) -> PropertyReport:
    """Exact decision of the alpha-/BE-property: every maximum stable
    set must admit an S-path partition of the matching kind."""
    mode = _mode_key(mode)
    if D.n > PROPERTY_CAP:
        raise TooLarge(f"check_property capped at n={PROPERTY_CAP}")
    certificates = []
    for S in max_stable_sets(D).sets:
        pp = exists_s_path_partition(D, S, mode)
        if pp is None:
            return PropertyReport(
                digraph=serialize_digraph(D),
                property=mode,
                holds=False,
                failing_stable_set=S,
            )
        certificates.append((S, pp))
    return PropertyReport(
        digraph=serialize_digraph(D),
        property=mode,
        holds=True,
        certificates=tuple(certificates),
    )


def check_diperfect(D: Digraph, mode: str, memo: dict | None = None) -> PropertyReport:
    """Hereditary version: the property must hold on every induced
    subdigraph.  Reports the smallest failing induced subdigraph, if
    any.  An explicit memo dict (canonical form -> holds) may be shared
    across calls; pass a throwaway dict to disable sharing."""
    from .core import induced

    mode = _mode_key(mode)
    if D.n > DIPERFECT_CAP:
        raise TooLarge(f"check_diperfect capped at n={DIPERFECT_CAP}")
    if memo is None:
        memo = {}
    for size in range(1, D.n + 1):
        for subset in itertools.combinations(range(D.n), size):
            sub, vmap = induced(D, subset)
            key = (mode, canonical_form(sub))
            holds = memo.get(key)
            if holds is None:
                holds = check_property(sub, mode).holds
                memo[key] = holds
            if not holds:
                detail = check_property(sub, mode)
                lifted = tuple(vmap[v] for v in detail.failing_stable_set)
                return PropertyReport(
                    digraph=serialize_digraph(sub),
                    property=mode,
                    holds=False,
                    failing_stable_set=lifted,
                    failing_vertices=subset,
                )
    full = check_property(D, mode)
    return PropertyReport(
        digraph=serialize_digraph(D),
        property=mode,
        holds=True,
        certificates=full.certificates,
    )


# -- enumeration and sampling ----------------------------------------------

_PAIR_STATES = (0, 1, 2, 3)  # none, u->v, v->u, digon


def _digraph_from_choice(n: int, pairs, choice) -> Digraph:
    arcs = []
    for (u, v), c in zip(pairs, choice):
        if c == 1:
            arcs.append((u, v))
        elif c == 2:
            arcs.append((v, u))
        elif c == 3:
            arcs.append((u, v))
            arcs.append((v, u))
    return Digraph(n, arcs)


def enumerate_digraphs(n: int, up_to_iso: bool = False, filter=None):
    """All labeled digraphs on n vertices (4 states per unordered pair)
    in deterministic order; optional predicate filter and isomorphism
    dedup via canonical forms."""
    if n > ENUMERATE_CAP:
        raise TooLarge(f"exhaustive enumeration capped at n={ENUMERATE_CAP}")
    pairs = list(itertools.combinations(range(n), 2))
    seen: set[bytes] = set()
    for choice in itertools.product(_PAIR_STATES, repeat=len(pairs)):
        D = _digraph_from_choice(n, pairs, choice)
        if filter is not None and not filter(D):
            continue
        if up_to_iso:
            key = canonical_form(D)
            if key in seen:
                continue
            seen.add(key)
        yield D


def sample_digraphs(
    n: int,
    count: int,
    seed: int,
    filter=None,
    p_arc: float = 0.3,
    p_digon: float = 0.2,
    max_tries: int = 2_000_000,
):
    """Seeded rejection sampler over labeled digraphs."""
    rng = random.Random(seed)
    produced = 0
    for _ in range(max_tries):
        if produced == count:
            return
        arcs = []
        for u in range(n):
            for v in range(u + 1, n):
                r = rng.random()
                if r < p_digon:
                    arcs += [(u, v), (v, u)]
                elif r < p_digon + p_arc:
                    arcs.append((u, v) if rng.random() < 0.5 else (v, u))
        D = Digraph(n, arcs)
        if filter is None or filter(D):
            produced += 1
            yield D
    raise BudgetExceeded(
        f"sampler produced {produced}/{count} digraphs in {max_tries} tries"
    )


# -- conjecture survey ------------------------------------------------------


def _survey_one(D: Digraph, mode: str, memo: dict):
    in_cls = in_class_b(D) if mode == "alpha" else in_class_d(D)
    diperfect = check_diperfect(D, mode, memo=memo).holds
    return in_cls, diperfect


def _survey_worker(args):
    text, mode = args
    D = deserialize_digraph(text)
    in_cls, diperfect = _survey_one(D, mode, {})
    return D.n, in_cls, diperfect, text


def survey_conjecture(
    n_max: int,
    mode: str,
    budget: int | None = None,
    up_to_iso: bool = True,
    jobs: int = 1,
) -> SurveyReport:
    """Cross-tabulate class membership against diperfection for every
    digraph up to order n_max and record biconditional violations."""
    mode = _mode_key(mode)
    if n_max > ENUMERATE_CAP:
        raise TooLarge(f"survey capped at n_max={ENUMERATE_CAP}")
    counts: dict[str, int] = {}
    counterexamples: list[str] = []
    processed = 0

    def stream():
        nonlocal processed
        for n in range(1, n_max + 1):
            for D in enumerate_digraphs(n, up_to_iso=up_to_iso):
                if budget is not None and processed >= budget:
                    raise BudgetExceeded(f"survey budget of {budget} digraphs exceeded")
                processed += 1
                yield D

    if jobs > 1:
        import multiprocessing

        payload = ((serialize_digraph(D), mode) for D in stream())
        with multiprocessing.Pool(jobs) as pool:
            results = list(pool.imap(_survey_worker, payload, chunksize=64))
    else:
        memo: dict = {}
        results = [
            (D.n, *_survey_one(D, mode, memo), serialize_digraph(D))
            for D in stream()
        ]

    for n, in_cls, diperfect, text in results:
        key = f"n={n}/in_class={str(in_cls).lower()}/diperfect={str(diperfect).lower()}"
        counts[key] = counts.get(key, 0) + 1
        if in_cls != diperfect:
            counterexamples.append(text)

    return SurveyReport(
        n_max=n_max,
        mode=mode,
        counts=tuple(sorted(counts.items())),
        counterexamples=tuple(sorted(counterexamples)),
        stats=(("digraphs_processed", processed),),
    )


# -- theorem validation -----------------------------------------------------


def _cycle_orientations(n: int):
    """All digraphs whose underlying graph is the n-cycle 0-1-...-0."""
    for choice in itertools.product((0, 1, 2), repeat=n):
        arcs = []
        for i, c in enumerate(choice):
            j = (i + 1) % n
            if c == 0:
                arcs.append((i, j))
            elif c == 1:
                arcs.append((j, i))
            else:
                arcs += [(i, j), (j, i)]
        yield Digraph(n, arcs)


def _semicomplete_digraphs(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    for choice in itertools.product((1, 2, 3), repeat=len(pairs)):
        yield _digraph_from_choice(n, pairs, choice)


def _symmetric_digraphs(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    for choice in itertools.product((0, 3), repeat=len(pairs)):
        yield _digraph_from_choice(n, pairs, choice)


def _sample_semi_symmetric(n: int, count: int, seed: int, lonely: int | None):
    """Seeded sampler: a random symmetric digraph plus k lonely arcs on
    previously non-adjacent pairs (k = lonely, or uniform over 0..3)."""
    rng = random.Random(seed)
    produced = 0
    while produced < count:
        k = lonely if lonely is not None else rng.randrange(4)
        arcs: set[tuple[int, int]] = set()
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < 0.5:
                    arcs |= {(u, v), (v, u)}
        free = [
            (u, v)
            for u in range(n)
            for v in range(n)
            if u != v and (u, v) not in arcs
        ]
        rng.shuffle(free)
        chosen: list[tuple[int, int]] = []
        for u, v in free:
            if len(chosen) == k:
                break
            if (v, u) not in arcs and (v, u) not in chosen:
                chosen.append((u, v))
        if len(chosen) != k:
            continue
        produced += 1
        yield Digraph(n, sorted(arcs | set(chosen)))


_EXHAUSTIVE_CAP = 5


def _class_members(class_name: str, n: int, samples, seed: int, lonely):
    """Instance stream for validate_theorem: class-specific exhaustive
    enumeration when samples is None (n <= 5), seeded sampling otherwise."""
    exhaustive = samples is None
    if exhaustive and n > _EXHAUSTIVE_CAP:
        raise TooLarge(f"exhaustive validation capped at n={_EXHAUSTIVE_CAP}")

    if class_name == "semicomplete":
        if exhaustive:
            return _dedup(_semicomplete_digraphs(n))
        return sample_digraphs(
            n, samples, seed, filter=is_semicomplete, p_arc=0.5, p_digon=0.5
        )
    if class_name == "cycle":
        if exhaustive:
            return _dedup(_cycle_orientations(n))
        rng = random.Random(seed)

        def cycles():
            pool = list(_cycle_orientations(n))
            for _ in range(samples):
                yield rng.choice(pool)

        return cycles()
    if class_name == "semi_symmetric":
        if exhaustive:
            # the symmetric (zero lonely arcs) members; lonely-arc
            # variants are covered by the samplers
            return _dedup(_symmetric_digraphs(n))
        return _sample_semi_symmetric(n, samples, seed, lonely)

    predicate = {
        "perfect": lambda D: is_perfect(underlying_graph(D))[0],
        "series_parallel": lambda D: is_series_parallel(underlying_graph(D)),
        "in_semicomplete": is_in_semicomplete,
    }[class_name]
    if exhaustive:
        return enumerate_digraphs(n, up_to_iso=True, filter=predicate)
    density = {
        "perfect": (0.3, 0.2),
        "series_parallel": (0.22, 0.15),
        "in_semicomplete": (0.25, 0.15),
    }[class_name]
    return sample_digraphs(
        n, samples, seed, filter=predicate, p_arc=density[0], p_digon=density[1]
    )


def _dedup(stream):
    seen: set[bytes] = set()
    for D in stream:
        key = canonical_form(D)
        if key not in seen:
            seen.add(key)
            yield D


def _builder_for(class_name: str, mode: str):
    if class_name == "perfect":
        return lambda D, S: constructive.partition_perfect(D, S, mode)
    if class_name == "series_parallel":
        return lambda D, S: constructive.partition_series_parallel(D, S, mode)
    if class_name == "in_semicomplete":
        return lambda D, S: constructive.partition_in_semicomplete(D, S, mode)
    if class_name == "semicomplete":
        return lambda D, S: constructive.partition_semicomplete(D, S, mode)
    if class_name == "cycle":
        return lambda D, S: (constructive.partition_cycle_digraph(D, S, mode), None)
    if class_name == "semi_symmetric":
        # the builder emits begin-end partitions, which are also valid
        # alpha-mode certificates
        return lambda D, S: constructive.partition_semi_symmetric(D, S)
    raise UnknownClass(class_name)


_SKIP_ERRORS = (
    NotInClassB,
    NotInClassD,
    NotPerfect,
    SharedEndvertex,
)


def validate_theorem(
    class_name: str,
    n: int,
    mode: str,
    samples: int | None = None,
    seed: int = 0,
    lonely: int | None = None,
) -> SurveyReport:
    """Run the matching constructive builder on every maximum stable
    set of every generated class member, validate each certificate
    independently, and cross-check the exact oracle."""
    if class_name not in VALID_CLASSES:
        raise UnknownClass(f"unknown class {class_name!r}")
    mode = _mode_key(mode)
    builder = _builder_for(class_name, mode)

    instances = 0
    partitions = 0
    skipped = 0
    failures: list[str] = []

    for D in _class_members(class_name, n, samples, seed, lonely):
        instances += 1
        if class_name == "semicomplete" and find_induced_transitive_triangle(D):
            skipped += 1
            continue
        text = serialize_digraph(D)
        if class_name == "perfect":
            U = underlying_graph(D)
            if len(min_clique_partition(U)) != alpha_of(U):
                failures.append(f"{text}|clique-cover size differs from alpha")
                continue
        for S in max_stable_sets(D).sets:
            try:
                pp, _trace = builder(D, S)
            except _SKIP_ERRORS:
                skipped += 1
                continue
            except Exception as exc:  # noqa: BLE001 - recorded as a finding
                failures.append(f"{text}|S={S}|{type(exc).__name__}: {exc}")
                continue
            partitions += 1
            if not validate_partition(D, pp):
                failures.append(f"{text}|S={S}|invalid certificate")
                continue
            oracle_mode = "be" if class_name == "semi_symmetric" else mode
            if exists_s_path_partition(D, S, oracle_mode) is None:
                failures.append(f"{text}|S={S}|oracle denies existence")

    return SurveyReport(
        n_max=n,
        mode=mode,
        counts=(
            ("instances", instances),
            ("partitions_validated", partitions),
            ("skipped_out_of_hypothesis", skipped),
        ),
        counterexamples=tuple(failures),
        stats=(("digraphs_processed", instances),),
    )
