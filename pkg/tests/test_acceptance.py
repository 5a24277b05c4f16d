"""Acceptance criteria 1-8, one PASS/FAIL line each.

Run under pytest (lines bypass output capture) or as a script.
"""

import random
import sys
import time
from functools import lru_cache
from itertools import combinations
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from conftest import simple_points  # noqa: E402
from dp3castles.castle import build_castle, face_partition, trim_dangling  # noqa: E402
from dp3castles.contour import (  # noqa: E402
    NAMED_PATTERNS,
    dragon,
    is_self_intersecting,
    sign_changes,
    tuple_for_point,
)
from dp3castles.matchings import (  # noqa: E402
    count_matchings,
    minimal_matching_bruteforce,
    minimal_matching_descent,
    twist_lattice,
    twistable_faces,
    weight,
    weighted_sum,
    weighted_sum_framed,
)
from dp3castles.minmatch import (  # noqa: E402
    ConstructionGap,
    ZERO_LINE_REGIONS,
    arithmetic_heights,
    border_faces,
    borders,
    check_covering_table,
    construct,
    edges_along,
    floor_identity_holds,
    regions_of,
    sign_completions,
    staircase_heights,
)
from dp3castles.prism import cluster_var_at_point  # noqa: E402
from dp3castles.quiver import apply_word, dp3_quiver, initial_seed, same_labeled_seed  # noqa: E402
from dp3castles.tiling import dual_quiver  # noqa: E402

ORACLE_CAP = 20_000  # norm-3 spot points for the cluster-variable checks
EXHAUST_CAP = 4_096  # minima found by exhaustion up to here, by twist-down descent above
LATTICE_CAP = 4_096
APPENDIX = [(4, 3, 2), (5, 3, 2), (0, 4, 3), (0, 4, 4), (2, 3, 5), (1, 4, 2), (1, 3, 4), (2, 2, 3)]
DRAGONS = [dragon("D", 5), dragon("D'", 5), dragon("D_half", 4), dragon("D'_half", 4)]


def report(n, title, ok, detail, elapsed):
    print(f"criterion {n} ({title}): {'PASS' if ok else 'FAIL'} [{detail}; {elapsed:.1f}s]", flush=True)
    return ok


@lru_cache(maxsize=None)
def oracle_points():
    """Every simple point with norm <= 2, plus a spread of norm-3 points under the cap."""
    shell = [p for p in simple_points(3) if max(map(abs, p)) == 3]
    small = [p for p in shell if count_matchings(build_castle(*p), limit=ORACLE_CAP + 1) <= ORACLE_CAP]
    return tuple(simple_points(2)) + tuple(small[::5])


@lru_cache(maxsize=None)
def minmatch_points():
    return tuple(simple_points(3)) + tuple(APPENDIX) + tuple(DRAGONS)


# -- criteria ----------------------------------------------------------------------


def criterion_1():
    t0 = time.perf_counter()
    words = [[i, i] for i in range(1, 6)]
    words += [[i, j] * 3 for i, j in combinations((1, 2, 3), 2)]
    commuting = [([i, t], [t, i]) for i in (1, 2, 3) for t in (4, 5)]
    bad = []
    for framed in (False, True):
        # the initial seed and a few seeds further out
        for start in ([], [4], [1, 5, 2], [3, 4, 1]):
            s = apply_word(initial_seed(framed), start)
            for w in words:
                if not same_labeled_seed(apply_word(s, w), s):
                    bad.append((framed, start, w))
            for a, b in commuting:
                if not same_labeled_seed(apply_word(s, a), apply_word(s, b)):
                    bad.append((framed, start, a))
    n = 2 * 4 * (len(words) + len(commuting))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 10
    return report(1, "tau relations, exact", ok, f"{n - len(bad)}/{n} identities hold", elapsed)


def criterion_2():
    t0 = time.perf_counter()
    pts = oracle_points()
    bad = [p for p in pts if weighted_sum(build_castle(*p)) != cluster_var_at_point(p)]
    detail = f"{len(pts) - len(bad)}/{len(pts)} points equal" + (f", first miss {bad[0]}" if bad else "")
    return report(2, "matching sum = cluster variable, exact", not bad, detail, time.perf_counter() - t0)


def criterion_3():
    t0 = time.perf_counter()
    pts = oracle_points()
    bad = []
    for p in pts:
        c = build_castle(*p)
        m_min = minimal_matching_descent(c)
        z = cluster_var_at_point(p, framed=True)
        free = z.y_free_part()
        if weighted_sum_framed(c, m_min) != z or len(free) != 1 or free != weight(m_min):
            bad.append(p)
    detail = f"{len(pts) - len(bad)}/{len(pts)} framed points equal with one y-free term"
    return report(3, "framed sum and y-free term, exact", not bad, detail, time.perf_counter() - t0)


def _reference_minimum(c):
    if count_matchings(c, limit=EXHAUST_CAP + 1) <= EXHAUST_CAP:
        return minimal_matching_bruteforce(c, EXHAUST_CAP), "exhaustive"
    return minimal_matching_descent(c), "descent"


def criterion_4():
    t0 = time.perf_counter()
    pts = minmatch_points()
    bad, kinds = [], {"exhaustive": 0, "descent": 0}
    for p in pts:
        c = build_castle(*p)
        ref, kind = _reference_minimum(c)
        kinds[kind] += 1
        try:
            built = construct(c).matching
        except ConstructionGap:
            bad.append(p)
            continue
        if built.edges != ref.edges:
            bad.append(p)
    detail = (
        f"{len(pts) - len(bad)}/{len(pts)} castles equal "
        f"({kinds['exhaustive']} exhaustive, {kinds['descent']} twist-down)"
    )
    if bad:
        detail += f", first miss {bad[0]}"
    return report(4, "constructed = lattice minimum, exact", not bad, detail, time.perf_counter() - t0)


def lemma_failures(c):
    res = construct(c)
    m, sm = res.matching, res.sectors
    pos, neg = twistable_faces(m)
    pos_keys = {f.key for f in pos}
    twistable = pos_keys | {f.key for f in neg}
    faces = border_faces(c, sm)
    checks = {
        "perfect": m.is_perfect(),
        "interior": not faces["interior"] & twistable,
        "straight edges": not edges_along(c, sm, "straight") & m.edges,
        "straight faces": not faces["straight"] & twistable,
        "staircase": not faces["staircase"] & pos_keys,
        "zero line": not faces["zero"] & pos_keys,
        "no positive face": not pos_keys,
    }
    return [k for k, v in checks.items() if not v]


def criterion_5():
    t0 = time.perf_counter()
    pts = minmatch_points()
    bad = {}
    for p in pts:
        try:
            fails = lemma_failures(build_castle(*p))
        except ConstructionGap:
            fails = ["construction"]
        if fails:
            bad[p] = fails
    detail = f"{len(pts) - len(bad)}/{len(pts)} castles clean"
    if bad:
        p = next(iter(bad))
        detail += f", first miss {p}: {', '.join(bad[p])}"
    return report(5, "border and sector lemmas, exact", not bad, detail, time.perf_counter() - t0)


def _borders(contour):
    # same sign fallback order as the construction
    for signs in sign_completions(contour):
        try:
            return borders(contour, signs)
        except ConstructionGap:
            continue
    return None


def criterion_6(radius=7):
    t0 = time.perf_counter()
    identities = failures = 0
    for i in range(-20, 21):
        for j in range(-20, 21):
            for k in range(1, 21):
                for region in regions_of(i, j, k):
                    identities += 1
                    failures += not floor_identity_holds(region, i, k)
    compared, mismatches = 0, []
    for i in range(-radius, radius + 1):
        for j in range(-radius, radius + 1):
            for k in range(1, radius + 1):
                c = tuple_for_point(i, j, k)
                if is_self_intersecting(c):
                    continue
                sm = _borders(c)
                for region in regions_of(i, j, k):
                    # boundary points only count for the region whose pattern they carry
                    if sm is None or sm.signs != NAMED_PATTERNS[region]:
                        continue
                    compared += 1
                    if staircase_heights(sm) != arithmetic_heights(region, i, k):
                        mismatches.append((region, (i, j, k)))
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and not mismatches and elapsed < 5
    detail = (
        f"{identities - failures}/{identities} floor identities over {len(ZERO_LINE_REGIONS)} regions; "
        f"heights {compared - len(mismatches)}/{compared} match"
    )
    if mismatches:
        regs = sorted({r for r, _ in mismatches})
        detail += f", misses in region {'/'.join(regs)} e.g. {mismatches[0][1]}"
    return report(6, "zero-line arithmetic, exact", ok, detail, elapsed)


def criterion_7():
    t0 = time.perf_counter()
    rng = random.Random(20240607)
    bad = []
    simple = 0
    for _ in range(10_000):
        p = tuple(rng.randint(-40, 40) for _ in range(3))
        c = tuple_for_point(*p)
        if not (c.closure_holds() and c.balance_holds() and c.is_closed()):
            bad.append(("closure", p))
        if not is_self_intersecting(c):
            simple += 1
            if c.signs is None or sign_changes(c.signs) != 4:
                bad.append(("signs", p))
    castles = simple_points(3)
    for p in castles:
        c = build_castle(*p)
        if len(c.blacks) != len(c.whites):
            bad.append(("colour", p))
    lattices = 0
    for p in simple_points(2):
        c = trim_dangling(build_castle(*p))
        if count_matchings(c, limit=LATTICE_CAP + 1) > LATTICE_CAP:
            continue
        lattices += 1
        try:
            lat = twist_lattice(c, LATTICE_CAP)
        except AssertionError:
            bad.append(("extrema", p))
            continue
        rank = lat.ranks()
        if None in rank or any(rank[hi] != rank[lo] + 1 for hi, lo in lat.covers):
            bad.append(("graded", p))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 60
    detail = (
        f"10000 random contours ({simple} simple), {len(castles)} castles balanced, "
        f"{lattices} lattices graded with unique extrema"
    )
    if bad:
        detail += f", {len(bad)} failures e.g. {bad[0]}"
    return report(7, "structural invariants, exact", ok, detail, elapsed)


def criterion_8():
    t0 = time.perf_counter()
    checks = {}
    checks["dual quiver"] = dual_quiver() == dp3_quiver()
    try:
        check_covering_table()
        checks["covering table"] = True
    except AssertionError:
        checks["covering table"] = False
    c = build_castle(-1, 3, 1)
    t = trim_dangling(c)
    interior, boundary = face_partition(c)
    checks["construction fixture"] = (
        c.contour.sides == (4, -3, 0, 3, -2, -1)
        and (len(c.vertices), len(c.edges), len(c.faces)) == (56, 84, 57)
        and (len(t.vertices), len(t.edges), len(t.forced)) == (44, 69, 6)
        and (len(interior), len(boundary)) == (29, 28)
    )
    elapsed = time.perf_counter() - t0
    ok = all(checks.values()) and elapsed < 1
    detail = ", ".join(f"{k} {'ok' if v else 'BAD'}" for k, v in checks.items())
    return report(8, "transcription firewall, exact", ok, detail, elapsed)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


def test_criterion_1_tau_relations(capsys):
    with capsys.disabled():
        ok = criterion_1()
    assert ok


def test_criterion_2_matching_sum(capsys):
    with capsys.disabled():
        ok = criterion_2()
    assert ok


def test_criterion_3_framed_sum(capsys):
    with capsys.disabled():
        ok = criterion_3()
    assert ok


def test_criterion_4_constructed_minimum(capsys):
    with capsys.disabled():
        ok = criterion_4()
    assert ok


def test_criterion_5_lemmas(capsys):
    with capsys.disabled():
        ok = criterion_5()
    assert ok


def test_criterion_6_zero_line_arithmetic(capsys):
    with capsys.disabled():
        ok = criterion_6()
    assert ok


def test_criterion_7_structure(capsys):
    with capsys.disabled():
        ok = criterion_7()
    assert ok


def test_criterion_8_transcription(capsys):
    with capsys.disabled():
        ok = criterion_8()
    assert ok


if __name__ == "__main__":
    results = [f() for f in CRITERIA]
    sys.exit(0 if all(results) else 1)
