"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the summary lines.
"""

import itertools
import random
import time

from labcon import solve_twdp_auto
from labcon.branch import solve_branch
from labcon.decomposition import duplicate_bags, heuristic_decompose, nicify, trivial_decomposition
from labcon.graph import (
    InstancePair,
    LabeledGraph,
    apply_sequence,
    check_witness,
    contract_edge,
    degeneracy,
    greedy_coloring,
    num_colors,
    union_graph,
)
from labcon.oracle import solve_bruteforce
from labcon.reductions import (
    CnfFormula,
    CrossMatchingInstance,
    PvcInstance,
    all_solutions,
    certificate_crossmatch,
    certificate_from_assignment,
    certificate_pvc,
    crossmatch_bruteforce,
    gen_from_1in3sat,
    gen_from_crossmatching,
    gen_from_nae34sat,
    gen_from_pvc,
    gen_random,
    pvc_bruteforce,
    sat_bruteforce,
)
from labcon.errors import InvalidPartition
from labcon.twdp import solve_twdp


def report(num, ok, detail):
    print(f"\ncriterion {num}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, detail


def connected_graphs(n):
    verts = list(range(n))
    pairs = list(itertools.combinations(verts, 2))
    for mask in range(1 << len(pairs)):
        g = LabeledGraph(verts, [p for i, p in enumerate(pairs) if mask >> i & 1])
        if len(g.components()) == 1:
            yield g


def within_two_contractions(g):
    out = {g}
    frontier = {g}
    for _ in range(2):
        nxt = set()
        for x in frontier:
            for u, v in x.edges():
                nxt.add(contract_edge(x, u, v))
                nxt.add(contract_edge(x, v, u))
        out |= nxt
        frontier = nxt
    return out


def three_way(inst):
    """Answers of the three solvers; None if any YES certificate fails to verify."""
    results = [solve_bruteforce(inst), solve_branch(inst), solve_twdp_auto(inst)]
    for r in results:
        if r.yes and not check_witness(inst, r.certificate).valid:
            return None
    return {r.answer for r in results}


def test_criterion_1_three_way_agreement():
    t0 = time.perf_counter()
    total = yes = bad = graphs = 0
    for n in range(1, 6):
        for g in connected_graphs(n):
            graphs += 1
            for h in within_two_contractions(g):
                # each reachable H plus every single-pair toggle of it (mostly NO cases)
                hs = [h] + [
                    LabeledGraph(h.vertices, sorted(set(h.edges()) ^ {pair}))
                    for pair in itertools.combinations(sorted(h.vertices), 2)
                ]
                for hh in hs:
                    answers = three_way(InstancePair(g, hh))
                    total += 1
                    if answers is None or len(answers) != 1:
                        bad += 1
                    elif answers == {"YES"}:
                        yes += 1
    random_bad = 0
    for seed in range(500):
        rng = random.Random(seed)
        n = rng.randint(2, 10)
        k = rng.randint(1, min(4, n - 1))
        mode = "yes" if seed % 2 == 0 else "perturbed"
        gi = gen_random(n, k, seed, mode, rng.choice([0.2, 0.3, 0.5]))
        answers = three_way(gi.instance)
        if answers is None or len(answers) != 1 or (mode == "yes" and answers != {"YES"}):
            random_bad += 1
    elapsed = time.perf_counter() - t0
    report(
        1,
        bad == 0 and random_bad == 0 and graphs == 772 and elapsed < 300,
        f"{graphs} graphs, {total} family instances ({yes} YES), 500 random, "
        f"{bad + random_bad} disagreements, {elapsed:.0f}s",
    )


def _onein3_formulas():
    triples = list(itertools.combinations(range(1, 5), 3))
    rng = random.Random(2)
    out = []
    for m in range(1, 4):
        for clauses in itertools.product(triples, repeat=m):
            for _ in range(3):
                out.append(CnfFormula(4, [tuple(rng.sample(c, 3)) for c in clauses]))
    for perm in itertools.permutations((1, 2, 3)):
        out.append(CnfFormula(3, [perm]))
    return out


def _nae_formulas():
    rng = random.Random(3)
    out = [CnfFormula(1, [(1, 1, 1)]), CnfFormula(3, [(1, 1, 2), (2, 2, 3), (1, 1, 3)])]
    while len(out) < 24:
        n = rng.randint(2, 4)
        m = rng.randint(1, 3)
        f = CnfFormula(n, [tuple(rng.randint(1, n) for _ in range(3)) for _ in range(m)])
        if max(f.occurrences().values()) <= 4:
            out.append(f)
    return out


def _crossmatch_instances():
    rng = random.Random(4)
    out = []
    for _ in range(120):
        n = rng.randint(1, 3)
        verts = list(range(2 * n))
        a, b = verts[:n], verts[n:]
        edges = [p for p in itertools.combinations(verts, 2) if rng.random() < 0.5]
        out.append(CrossMatchingInstance(LabeledGraph(verts, edges), a, b))
    return out


def _pvc_instances(count=60):
    rng = random.Random(1)
    out = []
    while len(out) < count:
        n = rng.randint(2, 6)
        verts = list(range(n))
        t = rng.randint(2, min(4, n))
        lab = [rng.randrange(t) for _ in verts]
        if len(set(lab)) < t:
            continue
        parts = [frozenset(v for v in verts if lab[v] == i) for i in range(t)]
        edges = [(rng.choice(sorted(parts[i])), rng.choice(sorted(parts[j])))
                 for i, j in itertools.combinations(range(t), 2)]
        try:
            p = PvcInstance(LabeledGraph(verts, edges), parts, [rng.randint(0, len(c)) for c in parts])
        except (InvalidPartition, ValueError):
            continue
        out.append(p)
    return out


def test_criterion_2_reduction_soundness():
    bad = []
    counts = {}
    formulas = _onein3_formulas()
    for f in formulas:
        if sat_bruteforce(f, "oneinthree")[0] != solve_bruteforce(gen_from_1in3sat(f)).yes:
            bad.append(("1in3", f))
    # an unsatisfiable 1-in-3 instance, just outside the clause range
    core = CnfFormula(4, list(itertools.combinations(range(1, 5), 3)))
    if sat_bruteforce(core, "oneinthree")[0] or solve_bruteforce(gen_from_1in3sat(core)).yes:
        bad.append(("1in3-core", core))
    counts["1in3"] = len(formulas) + 1
    nae = _nae_formulas()
    for f in nae:
        if sat_bruteforce(f, "nae")[0] != solve_bruteforce(gen_from_nae34sat(f)).yes:
            bad.append(("nae", f))
    counts["nae"] = len(nae)
    cms = _crossmatch_instances()
    for cm in cms:
        if (crossmatch_bruteforce(cm) is not None) != solve_bruteforce(gen_from_crossmatching(cm)).yes:
            bad.append(("cm", cm))
    counts["crossmatch"] = len(cms)
    pvcs = _pvc_instances()
    for p in pvcs:
        if (pvc_bruteforce(p) is not None) != solve_bruteforce(gen_from_pvc(p)).yes:
            bad.append(("pvc", p))
    counts["pvc"] = len(pvcs)
    report(2, not bad and counts["1in3"] >= 200, f"checked {counts}, {len(bad)} mismatches")


def test_criterion_3_certificate_replay():
    replayed = failed = 0
    for f in _onein3_formulas():
        inst = gen_from_1in3sat(f)
        for a in itertools.islice(all_solutions(f, "oneinthree"), 2):
            replayed += 1
            failed += apply_sequence(inst.g, certificate_from_assignment(f, a, "oneinthree")) != inst.h
    for f in _nae_formulas():
        inst = gen_from_nae34sat(f)
        for a in itertools.islice(all_solutions(f, "nae"), 2):
            replayed += 1
            failed += apply_sequence(inst.g, certificate_from_assignment(f, a, "nae34")) != inst.h
    for cm in _crossmatch_instances():
        m = crossmatch_bruteforce(cm)
        if m is not None:
            inst = gen_from_crossmatching(cm)
            replayed += 1
            failed += apply_sequence(inst.g, certificate_crossmatch(m)) != inst.h
    for p in _pvc_instances():
        cover = pvc_bruteforce(p)
        if cover is not None:
            inst = gen_from_pvc(p)
            replayed += 1
            failed += apply_sequence(inst.g, certificate_pvc(p, cover)) != inst.h
    report(3, failed == 0 and replayed >= 100, f"{replayed} certificates replayed, {failed} failures")


def test_criterion_4_degeneracy_bounds():
    violations = 0
    for seed in range(1000):
        rng = random.Random(seed)
        n = rng.randint(2, 30)
        k = rng.randint(1, min(10, n - 1))
        gi = gen_random(n, k, seed, "yes", rng.choice([0.1, 0.2, 0.4]))
        dg = degeneracy(gi.instance.g)[0]
        dh = degeneracy(gi.instance.h)[0]
        if dh > dg + k or dh > dg * 2 * n / (n - k):
            violations += 1
    report(4, violations == 0, f"1000 random (G, S), {violations} violations")


def test_criterion_5_structural_bounds():
    worst_nae = 0
    for f in _nae_formulas():
        worst_nae = max(worst_nae, gen_from_nae34sat(f).g.max_degree())
    # four occurrences per variable is the densest allowed input
    dense = CnfFormula(3, [(1, 2, 3)] * 4)
    worst_nae = max(worst_nae, gen_from_nae34sat(dense).g.max_degree())
    worst_g = worst_h = 0
    for f in _onein3_formulas():
        inst = gen_from_1in3sat(f)
        worst_g = max(worst_g, degeneracy(inst.g)[0])
        worst_h = max(worst_h, degeneracy(inst.h)[0])
    report(
        5,
        worst_nae <= 16 and worst_g <= 3 and worst_h <= 2,
        f"NAE max degree {worst_nae}, 1-in-3 degeneracy G {worst_g} H {worst_h}",
    )


def _branch_corpus():
    corpus = []
    seed = 0
    while len(corpus) < 150:
        rng = random.Random(seed)
        n = rng.randint(4, 16)
        k = rng.randint(1, min(8, n - 1))
        inst = gen_random(n, k, seed, "yes", rng.choice([0.15, 0.25, 0.4])).instance
        if degeneracy(inst.h)[0] <= 3:
            corpus.append(inst)
        seed += 1
    for f in _onein3_formulas()[:60]:
        if sat_bruteforce(f, "oneinthree")[0]:
            inst = gen_from_1in3sat(f)
            if inst.k <= 8:
                corpus.append(inst)
    for cm in _crossmatch_instances():
        if crossmatch_bruteforce(cm) is not None:
            corpus.append(gen_from_crossmatching(cm))
    for p in _pvc_instances():
        if pvc_bruteforce(p) is not None:
            inst = gen_from_pvc(p)
            if inst.k <= 8 and degeneracy(inst.h)[0] <= 3:
                corpus.append(inst)
    return [i for i in corpus if i.k <= 8 and degeneracy(i.h)[0] <= 3]


def test_criterion_6_branching_factor():
    corpus = _branch_corpus()
    worst_ratio = 0.0
    max_nodes = 0
    bad = 0
    slowest = 0.0
    for inst in corpus:
        t0 = time.perf_counter()
        res = solve_branch(inst)
        elapsed = time.perf_counter() - t0
        slowest = max(slowest, elapsed)
        colors = num_colors(greedy_coloring(inst.h))
        max_nodes = max(max_nodes, res.stats["nodes"])
        if colors:
            worst_ratio = max(worst_ratio, res.stats["max_branching"] / colors)
        if (not res.yes or res.stats["max_branching"] > colors
                or res.stats["nodes"] >= 10**6 or elapsed > 60):
            bad += 1
    report(
        6,
        bad == 0,
        f"{len(corpus)} YES instances, max nodes {max_nodes}, "
        f"max branching / colors {worst_ratio:.2f}, slowest {slowest:.2f}s",
    )


def test_criterion_7_decomposition_invariance():
    done = 0
    bad = 0
    seed = 0
    while done < 100:
        rng = random.Random(seed)
        n = rng.randint(4, 8)
        k = rng.randint(1, min(3, n - 1))
        mode = "yes" if seed % 2 == 0 else "perturbed"
        inst = gen_random(n, k, seed, mode, rng.choice([0.2, 0.35])).instance
        seed += 1
        u = union_graph(inst)
        heur = heuristic_decompose(u)
        if heur.width > 4:
            continue
        answers = set()
        for td in (trivial_decomposition(u), heur, duplicate_bags(heur)):
            res = solve_twdp(inst, nicify(td, u))
            answers.add(res.answer)
            if res.yes and not check_witness(inst, res.certificate).valid:
                bad += 1
        bad += len(answers) != 1
        done += 1
    report(7, bad == 0, f"{done} instances x 3 decompositions, {bad} inconsistencies")


def test_criterion_8_table_size_telemetry():
    # no desk-scale runtime claim is checked here; the solver only has to expose table sizes
    rows = []
    for seed in range(20):
        inst = gen_random(9, 3, seed, "yes").instance
        res = solve_twdp_auto(inst)
        sizes = res.stats["table_sizes"]
        rows.append((res.stats["width"], res.stats["max_table"], max(sizes), len(sizes)))
    ok = all(w >= 0 and mt == ms and n > 0 for w, mt, ms, n in rows)
    by_width = {}
    for w, mt, _, _ in rows:
        by_width[w] = max(by_width.get(w, 0), mt)
    report(8, ok, f"max table size by width {dict(sorted(by_width.items()))}")
