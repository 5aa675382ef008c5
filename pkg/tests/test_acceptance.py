"""Acceptance gate: one test per headline criterion, exact arithmetic only.

Each test prints a single "criterion N: PASS/FAIL" line; run with -v (or -s)
to see them.  All checks are zero tolerance.
"""

import math
from itertools import permutations

from qwalled.cellular import (
    cell_label,
    cell_labels,
    module_dimension,
    radical_rank,
    validate_cell_datum,
)
from qwalled.combinat import coset_count, coset_reps, perm_mul
from qwalled.engine import build_engine, central_element, verify_relations
from qwalled.groundfield import GenericField, OneVarField, PrimeField
from qwalled.repthy import (
    DELTA_ZERO_SEMISIMPLE,
    _engine,
    _module,
    branching_check,
    central_character,
    classify_simples,
    delta_zero_gram_checks,
    onearc_zero_locus,
    schur_truncation_check,
    semisimplicity,
    submodule_witness,
)

GEN = GenericField()


def _pairs(max_total):
    return [(r, s) for r in range(1, max_total) for s in range(1, max_total)
            if r + s <= max_total]


def _verdict(num, title, ok):
    print("criterion %2d: %s - %s" % (num, "PASS" if ok else "FAIL", title))
    assert ok, "criterion %d failed: %s" % (num, title)


def test_criterion_01_dimension_counts():
    """Engine closure has dimension (r+s)!, and the cell-module squares
    add up to it, generically through total 5 and over GF(p) through 6."""
    ok = True
    for r, s in _pairs(5):
        ok = ok and _engine(r, s, GEN).dim == math.factorial(r + s)
    gfp = PrimeField(13, 2, 6)
    for r, s in _pairs(6):
        ok = ok and build_engine(r, s, gfp).dim == math.factorial(r + s)
        total = sum(module_dimension(lab, r, s) ** 2
                    for lab in cell_labels(r, s))
        ok = ok and total == math.factorial(r + s)
    _verdict(1, "dimension counts", ok)


def test_criterion_02_relation_suite():
    """Every defining relation and every derived e_i identity holds as an
    exact identity, for all shapes with total at most 5."""
    seen = set()
    ok = True
    for r, s in _pairs(5):
        for name, good in verify_relations(_engine(r, s, GEN)):
            ok = ok and good
            seen.add(".".join(name.split("[")[0].split(".")[:2]))
    wanted = {"def.%s" % c for c in "abcdefghijklmn"}
    wanted |= {"tool.%s" % c for c in "abcdefg"}
    ok = ok and wanted <= seen
    _verdict(2, "relation suite", ok)


def _perm_subgroup(r, s, f):
    """The stabilizer: a diagonal copy of S_f on the first f letters of
    both factors, times S_{r-f} x S_{s-f} on the remaining letters."""
    out = []
    for w in permutations(range(1, f + 1)):
        for pu in permutations(range(f + 1, r + 1)):
            for pv in permutations(range(f + 1, s + 1)):
                out.append((w + pu, w + pv))
    return out


def test_criterion_03_coset_counts():
    """The distinguished reps hit each coset of the arc stabilizer exactly
    once, and their number is C(r,f) C(s,f) f!."""
    ok = True
    for r in range(1, 5):
        for s in range(1, 5):
            for f in range(min(r, s) + 1):
                sub = _perm_subgroup(r, s, f)
                reps = coset_reps(r, s, f)
                cosets = set()
                for d in reps:
                    u, v = d.perm_pair(r, s)
                    cosets.add(frozenset(
                        (perm_mul(hu, u), perm_mul(hv, v))
                        for hu, hv in sub))
                count = math.comb(r, f) * math.comb(s, f) * math.factorial(f)
                ok = ok and len(reps) == count == coset_count(r, s, f)
                ok = ok and len(cosets) == len(reps)
                ok = ok and (len(cosets) * len(sub)
                             == math.factorial(r) * math.factorial(s))
    _verdict(3, "coset counts", ok)


def test_criterion_04_cell_datum():
    """Basis, involution swap, and anchor-independent triangular action,
    checked over every anchor for all shapes with total at most 5."""
    ok = True
    for r, s in _pairs(5):
        report = validate_cell_datum(_engine(r, s, GEN))
        ok = (ok and report["ok"] and report["basis"]
              and report["involution"] and report["triangular"]
              and not report["failures"])
    _verdict(4, "cell datum", ok)


def test_criterion_05_central_element():
    """The central element commutes with every generator and acts on every
    cell module by the content-sum scalar."""
    ok = True
    for r, s in _pairs(5):
        eng = _engine(r, s, GEN)
        c = central_element(eng)
        gens = ([eng.g_el(i) for i in range(1, r)]
                + [eng.gs_el(j) for j in range(1, s)] + [eng.e1()])
        for g in gens:
            ok = ok and c * g == g * c
        for lab in cell_labels(r, s):
            central_character(lab, GEN, verify=True, engine=eng)
    _verdict(5, "central element", ok)


def test_criterion_06_onearc_zero_loci():
    """The one-arc hook Gram determinants vanish exactly on the stated
    rho-power lines, independent of the sign branch."""
    ok = True
    for r in (2, 3, 4):
        for kind in ("row", "column"):
            report = onearc_zero_locus(r, kind)
            ok = ok and report["ok"]
            ok = ok and report["vanishing"] == report["expected"]
    _verdict(6, "one-arc zero loci", ok)


def test_criterion_07_semisimplicity_grid():
    """Closed-form and Gram-determinant verdicts agree on the whole
    rho = +-q^a grid; the extreme powers are semisimple and the delta = 0
    points are semisimple exactly on the exceptional list."""
    ok = True
    for r, s in _pairs(5):
        for a in range(-(r + s), r + s + 1):
            for sign in (1, -1):
                v = semisimplicity(r, s, OneVarField(a, sign), mode="both")
                if a == 0:
                    expected = (r, s) in DELTA_ZERO_SEMISIMPLE
                else:
                    expected = abs(a) > r + s - 2
                ok = ok and v.verdict == expected
                if not v.verdict:
                    ok = ok and len(v.witnesses) > 0
                if abs(a) == r + s:
                    ok = ok and v.verdict
    ok = ok and not semisimplicity(2, 2, OneVarField(0, 1),
                                   mode="both").verdict
    _verdict(7, "semisimplicity grid", ok)


def test_criterion_08_delta_zero_determinants():
    """The three delta = 0 Gram determinants of sizes 6 and 8 all vanish
    at both rho = 1 and rho = -1."""
    report = delta_zero_gram_checks()
    ok = report["ok"] and report["sizes"] == [6, 8]
    ok = ok and len(report["cases"]) == 6
    ok = ok and all(row["det_is_zero"] for row in report["cases"])
    _verdict(8, "delta-zero determinants", ok)


def test_criterion_09_branching():
    """Restriction filtration: section dimensions add up, the restricted
    central element has the predicted trace, and the explicit section
    generators are nonzero, for every label with total at most 5."""
    ok = True
    for r, s in _pairs(5):
        if r < 2:
            continue
        eng = _engine(r, s, GEN)
        for lab in cell_labels(r, s):
            report = branching_check(eng, lab)
            ok = (ok and report["ok"] and report["dim_ok"]
                  and report["trace_ok"] and report["generators_nonzero"])
    _verdict(9, "branching", ok)


def test_criterion_10_schur_truncation():
    """Both corner idempotents cut each cell module down to the one-level-
    lower dimension, and the corner subspace of the whole algebra has
    dimension (r+s-1)!."""
    ok = True
    for r, s in _pairs(5):
        eng = _engine(r, s, GEN)
        choices = [c for c, cond in (("e_tilde", s >= 2), ("f21", r >= 2))
                   if cond]
        for lab in cell_labels(r, s):
            for choice in choices:
                report = schur_truncation_check(eng, lab, choice)
                ok = (ok and report["ok"] and report["rank_ok"]
                      and report["count_ok"])
    _verdict(10, "Schur truncation", ok)


def test_criterion_11_simple_classification():
    """The restricted-label list coincides with the set of labels whose
    Gram form has nonzero rank, over a generic, a delta = 0, and a
    quantum-characteristic-3 field."""
    e3 = PrimeField(13, 4, 2)
    ok = e3.quantum_characteristic() == 3
    for field in (GEN, OneVarField(0, 1), e3):
        for r, s in _pairs(4):
            eng = _engine(r, s, field)
            listed = set(classify_simples(r, s, field))
            positive = {lab for lab in cell_labels(r, s)
                        if radical_rank(_module(eng, lab))[0] > 0}
            ok = ok and listed == positive
    _verdict(11, "simple classification", ok)


def test_criterion_12_submodule_witnesses():
    """The explicit one-arc vector is killed by e_1 exactly on the extreme
    rho-power line: the positive power for the row witness, the negative
    one for the column witness."""
    ok = True
    for r, s in ((2, 2), (3, 2)):
        n = r + s - 2
        fields = [(GEN, None)]
        for sign in (1, -1):
            fields.append((OneVarField(n, sign), n))
            fields.append((OneVarField(-n, sign), -n))
        for kind in ("row", "column"):
            locus = n if kind == "row" else -n
            for field, a in fields:
                report = submodule_witness(r, s, kind, field)
                ok = ok and report["ok"] and report["nonzero"]
                expected_zero = a == locus
                ok = ok and report["e1v_zero"] == expected_zero
                ok = ok and report["scalar_zero"] == expected_zero
    _verdict(12, "submodule witnesses", ok)
