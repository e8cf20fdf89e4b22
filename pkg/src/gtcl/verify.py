"""Verification checks run by ``gtcl verify`` and the acceptance suite."""

from __future__ import annotations

import random
from collections import defaultdict
from fractions import Fraction

from .clbasis import cl_vector
from .gtrep import (
    GtVector,
    MatrixUnit,
    act,
    act_cartan,
    act_diagonal_difference,
    act_lower,
    act_raise,
    highest_weight_vector,
)
from .patterns import (
    BoundingTuple,
    Pattern,
    dominates,
    enumerate_patterns,
    length,
    weight,
    weyl_dimension,
)
from .transition import (
    Report,
    TransitionMatrix,
    bareiss_determinant,
    check_diagonal,
    check_triangular,
    determinant,
    diagonal_predicted,
    discrepancy_indices,
    incremented_pattern,
    interpolating_patterns,
    lemma_coefficient_oracle,
    recursion_scale,
    recursion_vector,
    transition_matrix,
)

EXHAUSTIVE_LIMIT = 200
SAMPLE_SIZE = 100
SHIFTS = (-3, 5)


def check_dimension(bounding: BoundingTuple) -> Report:
    count = len(enumerate_patterns(bounding))
    expected = weyl_dimension(bounding)
    ok = count == expected
    violations = [] if ok else [{"patterns": count, "weyl": expected}]
    return Report("dimension", ok, 1, violations, f"patterns={count} weyl={expected}")


def _basis_sample(bounding: BoundingTuple, seed: int) -> list[Pattern]:
    pats = list(enumerate_patterns(bounding))
    if len(pats) <= EXHAUSTIVE_LIMIT:
        return pats
    return random.Random(seed).sample(pats, SAMPLE_SIZE)


def _bracket_rhs(x: MatrixUnit, y: MatrixUnit, v: GtVector) -> GtVector:
    # [E(a,b), E(c,d)] = delta(b,c) E(a,d) - delta(d,a) E(c,b)
    a, b, c, d = x.row, x.col, y.row, y.col
    if b == c and d == a:
        return act_diagonal_difference(a, b, v)
    out = GtVector.zero(v.bounding)
    if b == c:
        out = out + act(MatrixUnit(a, d), v)
    if d == a:
        out = out - act(MatrixUnit(c, b), v)
    return out


def check_lie_relations(bounding: BoundingTuple, seed: int = 0) -> Report:
    """Matrix-unit commutation relations, Cartan eigenvalues and the Cartan
    brackets, on every basis vector (small modules) or a fixed random sample."""
    n = bounding.rank + 1
    units = [MatrixUnit(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if a != b]
    violations = []
    checked = 0
    sample = _basis_sample(bounding, seed)
    for p in sample:
        v = GtVector.basis(p)
        image = {u: act(u, v) for u in units}
        mu = weight(p).coords
        for k in range(1, n):
            checked += 1
            if act_cartan(k, v) != (mu[k - 1] - mu[k]) * v:
                violations.append({"pattern": str(p), "relation": f"H{k} eigenvalue"})
        for x in units:
            for y in units:
                checked += 1
                lhs = act(x, image[y]) - act(y, image[x])
                if lhs != _bracket_rhs(x, y, v):
                    violations.append({"pattern": str(p), "relation": f"[{x}][{y}]"})
            for k in range(1, n):
                checked += 1
                lhs = act_cartan(k, image[x]) - act(x, act_cartan(k, v))
                pair = (int(x.row == k) - int(x.row == k + 1)) - (int(x.col == k) - int(x.col == k + 1))
                if lhs != pair * image[x]:
                    violations.append({"pattern": str(p), "relation": f"[H{k}][{x}]"})
    detail = "exhaustive" if len(sample) == len(enumerate_patterns(bounding)) else f"{len(sample)} sampled vectors"
    return Report("lie_relations", not violations, checked, violations[:20], detail)


def check_highest_weight(bounding: BoundingTuple) -> Report:
    """Raising operators kill the highest-weight vector, it has the right
    Cartan eigenvalues, and lowering operators reach every basis vector."""
    vl = highest_weight_vector(bounding)
    lam = bounding.entries
    violations = []
    for k in range(1, bounding.rank + 1):
        if act_raise(k, vl):
            violations.append({"relation": f"E({k},{k + 1}) v_hw != 0"})
        if act_cartan(k, vl) != (lam[k - 1] - lam[k]) * vl:
            violations.append({"relation": f"H{k} v_hw"})
    seen = set(vl.terms)
    frontier = list(seen)
    while frontier:
        nxt = []
        for p in frontier:
            for k in range(1, bounding.rank + 1):
                for q in act_lower(k, GtVector.basis(p)).terms:
                    if q not in seen:
                        seen.add(q)
                        nxt.append(q)
        frontier = nxt
    total = len(enumerate_patterns(bounding))
    if len(seen) != total:
        violations.append({"relation": "reachability", "reached": len(seen), "total": total})
    return Report("highest_weight", not violations, 2 * bounding.rank + 1, violations)


def check_determinant(m: TransitionMatrix, bareiss_limit: int = 40) -> Report:
    det = determinant(m)
    violations = []
    if det == 0:
        violations.append({"determinant": "0"})
    detail = "nonzero" if det else "zero"
    detail += f", numerator {det.numerator.bit_length()} bits, denominator {det.denominator.bit_length()} bits"
    if m.size <= bareiss_limit:
        other = bareiss_determinant(m.entries)
        if other != det:
            violations.append({"diagonal_product": str(det), "bareiss": str(other)})
        else:
            detail += ", bareiss agrees"
    return Report("determinant", not violations, 1, violations, detail)


def check_proof_identities(bounding: BoundingTuple) -> Report:
    """Induction-step identities for every non-highest pattern.

    * recursion: CL vector of p equals the scaled E(j0,i0) image of the CL
      vector of the incremented pattern;
    * factorization: the coefficient of p in E(j0,i0) applied to the
      incremented pattern's GT vector is the product of single-step lowering
      coefficients along the interpolating patterns;
    * lemma: that coefficient equals the closed-form product;
    * diagonal step: the closed-form diagonal at p equals the one at the
      incremented pattern times the lemma value times the recursion scale;
    * support: for every p' dominating the incremented pattern, E(j0,i0)
      sends its GT vector into patterns dominating p, and hits p itself
      only when p' is the incremented pattern.
    """
    violations = []
    checked = 0
    by_weight = defaultdict(list)
    for q in enumerate_patterns(bounding):
        by_weight[weight(q)].append(q)
    for p in enumerate_patterns(bounding):
        if length(p) == 0:
            continue
        checked += 1
        i0, j0 = discrepancy_indices(p)
        tp = incremented_pattern(p)
        op = MatrixUnit(j0, i0)
        for q in by_weight[weight(tp)]:
            if q == tp or not dominates(q, tp):
                continue
            image = act(op, GtVector.basis(q))
            if image.coefficient(p):
                violations.append({"pattern": str(p), "identity": "unique preimage", "other": str(q)})
            if not all(dominates(s, p) for s in image.terms):
                violations.append({"pattern": str(p), "identity": "support dominance", "other": str(q)})
        if recursion_vector(p) != cl_vector(p):
            violations.append({"pattern": str(p), "identity": "recursion"})
        direct = act(op, GtVector.basis(tp)).coefficient(p)
        chain = interpolating_patterns(p)
        stepwise = Fraction(1)
        for k, (src, dst) in enumerate(zip(chain, chain[1:]), start=i0):
            stepwise *= act_lower(k, GtVector.basis(src)).coefficient(dst)
        if direct != stepwise:
            violations.append({"pattern": str(p), "identity": "factorization",
                               "direct": str(direct), "stepwise": str(stepwise)})
        lemma = lemma_coefficient_oracle(p)
        if direct != lemma:
            violations.append({"pattern": str(p), "identity": "lemma",
                               "direct": str(direct), "lemma": str(lemma)})
        if diagonal_predicted(p) != diagonal_predicted(tp) * lemma * recursion_scale(p):
            violations.append({"pattern": str(p), "identity": "diagonal step"})
    return Report("proof_identities", not violations, checked, violations[:20])


def check_shift_invariance(m: TransitionMatrix, shifts=SHIFTS) -> Report:
    violations = []
    checked = 0
    for c in shifts:
        shifted = transition_matrix(m.bounding.shifted(c))
        expected_order = tuple(p.shifted(c) for p in m.order)
        checked += 1
        if shifted.order != expected_order:
            violations.append({"shift": c, "problem": "pattern order"})
        elif shifted.entries != m.entries:
            violations.append({"shift": c, "problem": "entries"})
    return Report("shift_invariance", not violations, checked, violations)


def run_verification(bounding: BoundingTuple, shifts=SHIFTS) -> list[Report]:
    reports = [check_dimension(bounding), check_lie_relations(bounding), check_highest_weight(bounding)]
    m = transition_matrix(bounding)
    tri = check_triangular(m)
    reports += [tri, check_diagonal(m)]
    if tri.passed:
        reports.append(check_determinant(m))
    reports.append(check_proof_identities(bounding))
    reports.append(check_shift_invariance(m, shifts))
    return reports
