"""Representation-theoretic reports for the two-parameter algebra.

Central characters of cell modules, the classification of simple modules,
quasi-heredity, the semisimplicity criterion with its Gram cross-check,
one-arc vanishing loci, branching filtrations, truncation functors, and
explicit submodule witnesses.
"""

import json
import math
from dataclasses import dataclass

from .combinat import (
    Bipartition,
    Node,
    Partition,
    coset_count,
    count_std,
    e_restricted,
    content_scalar,
    nodes_addable,
    nodes_removable,
    reduced_word,
    s_range_word,
)
from .engine import (
    build_engine,
    central_element,
    g_tok,
    gs_tok,
    inv_letters,
)
from .groundfield import FieldError, GenericField, transfer_from_generic
from .hecke import HeckeAlgebra
from .linalg import Echelon, determinant
from .cellular import (
    _label_text,
    anchor_label,
    cell_label,
    cell_labels,
    cell_module,
    cellular_element,
    gram_determinant,
    gram_via_truncation,
    module_dimension,
    radical_rank,
)

DELTA_ZERO_SEMISIMPLE = frozenset({(1, 2), (2, 1), (1, 3), (3, 1)})


class RepError(Exception):
    pass


@dataclass(frozen=True)
class CentralCharacter:
    """The scalar by which the central element acts on one cell module."""

    label: object
    scalar: object


@dataclass(frozen=True)
class SemisimplicityVerdict:
    """Outcome of the semisimplicity criterion.

    reason is one of "quantum characteristic too small",
    "delta-zero exceptional list", "rho-power coincidence", "generic";
    witnesses lists the labels found with singular Gram matrices.
    """

    verdict: bool
    reason: str
    witnesses: tuple = ()


# ---------------------------------------------------------------------------
# shared caches

_ENGINES = {}


def _engine(r, s, field):
    key = (r, s, field)
    eng = _ENGINES.get(key)
    if eng is None:
        eng = build_engine(r, s, field)
        _ENGINES[key] = eng
    return eng


def _module(engine, label):
    cache = getattr(engine, "_repthy_modules", None)
    if cache is None:
        cache = engine._repthy_modules = {}
    mod = cache.get(label)
    if mod is None:
        mod = cell_module(engine, label)
        cache[label] = mod
    return mod


def label_rank(label):
    """(r, s) recovered from a cell label."""
    n1, n2 = label.shape.size
    return label.f + n1, label.f + n2


# ---------------------------------------------------------------------------
# central characters

def central_scalar(label, field):
    """f*delta - rho^{-1} sum of first-component content scalars - rho *
    sum of second-component content scalars."""
    rho = field.rho()
    out = field.delta() * field(label.f)
    for side, lam in enumerate(label.shape.components, start=1):
        total = field.zero()
        for i, j in lam.boxes():
            total = total + content_scalar(Node(i, j, side), field)
        out = out - (1 / rho if side == 1 else rho) * total
    return out


def central_character(label, field, verify=True, engine=None):
    """The central scalar on C(f, lambda), verified against the action
    matrix of the central element unless verify is False."""
    scalar = central_scalar(label, field)
    if verify:
        r, s = label_rank(label)
        eng = engine if engine is not None else _engine(r, s, field)
        _verify_scalar_action(eng, label, central_element(eng), scalar)
    return CentralCharacter(label, scalar)


def _verify_scalar_action(engine, label, elem, scalar):
    mod = _module(engine, label)
    mat = mod.action_matrix(elem)
    f = engine.field
    for i, row in enumerate(mat):
        for j, c in row.items():
            want = scalar.val if i == j else f.raw_from_int(0)
            if not f.raw_eq(c, want):
                raise RepError("central element is not scalar %s on %r"
                               % (scalar.to_text(), label))
    return True


def central_coincidences(r, s, field):
    """Pairs of distinct labels whose central scalars agree."""
    scalars = [(lab, central_scalar(lab, field)) for lab in cell_labels(r, s)]
    out = []
    for i, (la, ca) in enumerate(scalars):
        for lb, cb in scalars[i + 1:]:
            if ca == cb:
                out.append((la, lb))
    return out


# ---------------------------------------------------------------------------
# simple modules and quasi-heredity

def classify_simples(r, s, field):
    """Labels of the pairwise non-isomorphic simple modules."""
    e = field.quantum_characteristic()
    delta_zero = field.delta().is_zero()
    out = []
    for lab in cell_labels(r, s):
        if not e_restricted(lab.shape, e):
            continue
        if delta_zero and r == s and lab.f == r:
            continue
        out.append(lab)
    return out


def is_quasi_hereditary(r, s, field):
    e = field.quantum_characteristic()
    if e <= max(r, s):
        return False
    return not field.delta().is_zero() or r != s


# ---------------------------------------------------------------------------
# semisimplicity

def _closed_form_verdict(r, s, field):
    e = field.quantum_characteristic()
    if e <= max(r, s):
        return SemisimplicityVerdict(False, "quantum characteristic too small")
    if field.delta().is_zero():
        ok = (r, s) in DELTA_ZERO_SEMISIMPLE
        return SemisimplicityVerdict(ok, "delta-zero exceptional list")
    q, rho = field.q(), field.rho()
    rho2 = rho * rho
    for a in range(-(r + s - 2), r + s - 1):
        if rho2 == q ** (2 * a):
            return SemisimplicityVerdict(False, "rho-power coincidence")
    return SemisimplicityVerdict(True, "generic")


_GENERIC_DETS = {}


def _generic_gram_determinants(r, s):
    dets = _GENERIC_DETS.get((r, s))
    if dets is None:
        eng = _engine(r, s, GenericField())
        dets = {lab: gram_determinant(_module(eng, lab))
                for lab in cell_labels(r, s)}
        _GENERIC_DETS[(r, s)] = dets
    return dets


def gram_singular_labels(r, s, field):
    """Labels whose Gram matrix is singular over the field.

    Determinants are computed once over the generic field and pushed down;
    labels whose transfer is blocked fall back to a direct computation.
    """
    if isinstance(field, GenericField):
        eng = _engine(r, s, field)
        return [lab for lab in cell_labels(r, s)
                if radical_rank(_module(eng, lab))[1] > 0]
    out = []
    for lab, det in _generic_gram_determinants(r, s).items():
        try:
            value = transfer_from_generic(det, field)
        except FieldError:
            eng = _engine(r, s, field)
            value = gram_determinant(_module(eng, lab))
        if value.is_zero():
            out.append(lab)
    return out


def semisimplicity(r, s, field, mode="closed_form"):
    """The semisimplicity verdict, by closed form, by Gram determinants,
    or by both with an integrity comparison."""
    if mode not in ("closed_form", "gram", "both"):
        raise RepError("unknown mode %r" % (mode,))
    closed = _closed_form_verdict(r, s, field)
    if mode == "closed_form":
        return closed
    if closed.reason == "quantum characteristic too small":
        # no Gram work below the quantum characteristic bound
        return closed
    witnesses = tuple(gram_singular_labels(r, s, field))
    gram_verdict = not witnesses
    if mode == "both" and gram_verdict != closed.verdict:
        raise RepError(
            "closed form says %s but Gram matrices say %s; witnesses %r"
            % (closed.verdict, gram_verdict, witnesses))
    return SemisimplicityVerdict(gram_verdict, closed.reason, witnesses)


# ---------------------------------------------------------------------------
# one-arc vanishing loci

def onearc_zero_locus(r, kind):
    """Vanishing set of det G_{1,lambda} for the one-arc hook labels of
    (r, 1), sampled over rho^2 = q^{2a} with |a| <= r+1 in both sign
    branches."""
    from .groundfield import OneVarField
    if r < 2:
        raise RepError("needs r >= 2")
    if kind == "row":
        shape = Bipartition((r - 1,), ())
        expected = sorted((-1, r - 1))
    elif kind == "column":
        shape = Bipartition((1,) * (r - 1), ())
        expected = sorted((1, 1 - r))
    else:
        raise RepError("kind must be 'row' or 'column'")
    label = cell_label(r, 1, 1, shape)
    det = _generic_gram_determinants(r, 1)[label]
    vanishing = []
    for a in range(-(r + 1), r + 2):
        hits = []
        for sign in (1, -1):
            value = transfer_from_generic(det, OneVarField(a, sign))
            hits.append(value.is_zero())
        if hits[0] != hits[1]:
            raise RepError("vanishing at a=%d depends on the sign of rho" % a)
        if hits[0]:
            vanishing.append(a)
    return {
        "check": "onearc-zero-locus",
        "r": r,
        "kind": kind,
        "label": _label_text(label),
        "vanishing": vanishing,
        "expected": expected,
        "ok": vanishing == expected,
    }


# ---------------------------------------------------------------------------
# the delta = 0 determinant recomputation

def delta_zero_gram_checks():
    """det G_{1,lambda} = 0 at both delta = 0 points, for the three labels
    whose matrices have size 6 or 8."""
    from .groundfield import OneVarField
    cases = [
        (3, 2, Bipartition((2,), (1,))),
        (4, 1, Bipartition((2, 1), ())),
        (4, 2, Bipartition((1, 1, 1), (1,))),
    ]
    rows = []
    for r, s, shape in cases:
        label = cell_label(r, s, 1, shape)
        size = module_dimension(label, r, s)
        for sign in (1, -1):
            field = OneVarField(0, sign)
            eng = _engine(r, s, field)
            if eng.dim > math.factorial(5):
                gram = gram_via_truncation(eng, label)
                raw = determinant(field, [[e.val for e in row]
                                          for row in gram])
                is_zero = field.raw_is_zero(raw)
            else:
                is_zero = gram_determinant(_module(eng, label)).is_zero()
            rows.append({
                "r": r,
                "s": s,
                "label": _label_text(label),
                "rho": "%d" % sign,
                "size": size,
                "det_is_zero": is_zero,
            })
    return {
        "check": "delta-zero-grams",
        "cases": rows,
        "sizes": sorted({row["size"] for row in rows}),
        "ok": all(row["det_is_zero"] for row in rows),
    }


# ---------------------------------------------------------------------------
# branching

def branching_sections(label):
    """The cell-filtration sections of the restriction to the front
    (r-1, s) subalgebra, higher sections first.

    Sections of the first kind keep the layer and remove a node from the
    first component; sections of the second kind (only for f >= 1) drop
    the layer and add a node to the second component.
    """
    first, second = label.shape.components
    out = []
    for p in nodes_removable(first):
        out.append(("remove", p,
                    cell_label_any(label.f,
                                   Bipartition(first.remove_node(p), second))))
    if label.f >= 1:
        for p in nodes_addable(second):
            out.append(("add", p,
                        cell_label_any(label.f - 1,
                                       Bipartition(first, second.add_node(p)))))
    return out


def cell_label_any(f, shape):
    """A cell label without fixing (r, s); sizes are implied."""
    n1, n2 = shape.size
    return cell_label(f + n1, f + n2, f, shape)


def _anchor_element(engine, label):
    return cellular_element(engine, label, anchor_label(label),
                            anchor_label(label))


def _y_alpha(engine, label, node):
    """Class of the row-removal section generator in C(f, lambda)."""
    a_k = label.f + label.shape.first.partial_sums(node.row)[-1]
    x = _anchor_element(engine, label)
    for i in s_range_word(a_k, engine.r):
        x = engine.apply_token(x, g_tok(i))
    return x


def _z_beta(engine, label, node):
    """Class of the column-addition section generator in C(f, lambda)."""
    f = label.f
    lam2 = label.shape.second
    c_k = f + lam2.partial_sums(node.row)[-1]
    d_k = f + (lam2.partial_sums(node.row - 1)[-1] if node.row > 1 else 0) + 1
    entries = range(d_k, c_k + 1) if d_k <= c_k else (c_k,)
    anchor = _anchor_element(engine, label)
    q = engine.field.q()
    out = engine.zero()
    for j in entries:
        letters = [(gs_tok(i), 1) for i in s_range_word(j, c_k)]
        letters += inv_letters([(gs_tok(i), 1) for i in s_range_word(f, c_k)])
        letters += [(g_tok(i), 1) for i in s_range_word(engine.r, f)]
        x = anchor
        for tok, p in reversed(letters):
            x = engine.apply_token(x, tok, p)
        out = out + x.scale((-q) ** (j - c_k))
    return out


def branching_check(engine, label):
    """Dimension and central-trace verification of the restriction
    filtration, plus non-vanishing of the explicit section generators."""
    r, s = engine.r, engine.s
    if r < 2:
        raise RepError("needs r >= 2")
    field = engine.field
    mod = _module(engine, label)
    sections = branching_sections(label)
    section_rows = []
    total = 0
    expected_trace = field.zero()
    for kind, node, sec in sections:
        dim = module_dimension(sec, r - 1, s)
        scalar = central_scalar(sec, field)
        total += dim
        expected_trace = expected_trace + scalar * field(dim)
        section_rows.append({
            "kind": kind,
            "label": _label_text(sec),
            "dim": dim,
            "scalar": scalar.to_text(),
        })
    dim_ok = total == mod.dim
    trace = mod.action_trace(central_element(engine, r - 1, s))
    trace_ok = trace == expected_trace
    generators_ok = True
    for kind, node, sec in sections:
        if kind == "remove":
            vec = mod.element_vector(_y_alpha(engine, label, node))
        else:
            vec = mod.element_vector(_z_beta(engine, label, node))
        if not vec:
            generators_ok = False
    return {
        "check": "branching",
        "r": r,
        "s": s,
        "label": _label_text(label),
        "sections": section_rows,
        "dim": mod.dim,
        "dim_ok": dim_ok,
        "trace": trace.to_text(),
        "trace_ok": trace_ok,
        "generators_nonzero": generators_ok,
        "ok": dim_ok and trace_ok and generators_ok,
    }


# ---------------------------------------------------------------------------
# truncation functors

def _truncated_dimension(r, s, f, shape):
    """dim C(f, shape) over the (r, s) algebra by the counting formula,
    tolerating r = 0 or s = 0 (pure Hecke side)."""
    if f == 0:
        return count_std(shape)
    return count_std(shape) * coset_count(r, s, f)


def truncation_idempotent(engine, choice=None):
    """The chosen corner idempotent; defaults to the starred one when it
    exists."""
    if choice is None:
        choice = "e_tilde" if engine.s >= 2 else "f21"
    if choice == "e_tilde":
        return choice, engine.etilde12()
    if choice == "f21":
        return choice, engine.f21()
    raise RepError("idempotent choice must be 'e_tilde' or 'f21'")


def schur_truncation_check(engine, label, idempotent_choice=None):
    """Rank of the corner idempotent on C(f, lambda) against the
    dimension of the truncated module, with the induction-side dimension
    bookkeeping."""
    r, s = engine.r, engine.s
    choice, idem = truncation_idempotent(engine, idempotent_choice)
    mod = _module(engine, label)
    rank = mod.action_rank(idem)
    if label.f == 0:
        expected = 0
    else:
        expected = _truncated_dimension(r - 1, s - 1, label.f - 1,
                                        label.shape)
    ech = Echelon(engine.field)
    for t in range(engine.dim):
        ech.insert((engine.element({t: 1}) * idem).terms)
    module_count = ech.rank
    count_expected = math.factorial(r + s - 1)
    induced_dim = _truncated_dimension(r + 1, s + 1, label.f + 1, label.shape)
    return {
        "check": "schur-truncation",
        "r": r,
        "s": s,
        "label": _label_text(label),
        "choice": choice,
        "rank": rank,
        "expected_rank": expected,
        "rank_ok": rank == expected,
        "module_count": module_count,
        "module_count_expected": count_expected,
        "count_ok": module_count == count_expected,
        "induced_dim": induced_dim,
        "ok": rank == expected and module_count == count_expected,
    }


# ---------------------------------------------------------------------------
# submodule witnesses

def _apply_hecke_sym(engine, x, lam, offset, starred, kind):
    n = engine.s if starred else engine.r
    alg = HeckeAlgebra(n, engine.field)
    sym = alg.n_sym(lam, offset) if kind == "n" else alg.m_sym(lam, offset)
    mk = gs_tok if starred else g_tok
    out = engine.zero()
    for w, c in sym.terms.items():
        y = x
        for i in reduced_word(w):
            y = engine.apply_token(y, mk(i))
        out = out + y.scale(c)
    return out


def submodule_witness(r, s, kind, field=None):
    """The one-arc vector v whose e_1-image vanishes exactly on the
    extreme rho-power line; row uses the single-row shapes, column the
    single-column shapes."""
    field = field if field is not None else GenericField()
    if field.quantum_characteristic() <= max(r, s):
        raise RepError("needs quantum characteristic above max(r, s)")
    q, rho = field.q(), field.rho()
    n = r + s - 2
    if kind == "row":
        mu = Bipartition((r - 1,), (s - 1,))
        lam = Bipartition((r,), (s,))
        sym_shapes = (Partition((r,)), Partition((s,)))
        sym_kind = "n"
        scalar = field.delta() - rho * (1 - q ** (-2 * n)) / (q - 1 / q)
        locus = "rho^2 = q^(%d)" % (2 * n)
        scalar_zero_expected = rho * rho == q ** (2 * n)
    elif kind == "column":
        mu = Bipartition((1,) * (r - 1), (1,) * (s - 1))
        lam = Bipartition((1,) * r, (1,) * s)
        sym_shapes = (Partition((r,)), Partition((s,)))
        sym_kind = "m"
        scalar = field.delta() - rho * (1 - q ** (2 * n)) / (q - 1 / q)
        locus = "rho^2 = q^(%d)" % (-2 * n)
        scalar_zero_expected = rho * rho == q ** (-2 * n)
    else:
        raise RepError("kind must be 'row' or 'column'")
    eng = _engine(r, s, field)
    label = cell_label(r, s, 1, mu)
    mod = _module(eng, label)
    v = _anchor_element(eng, label)
    v = _apply_hecke_sym(eng, v, sym_shapes[0], 0, False, sym_kind)
    v = _apply_hecke_sym(eng, v, sym_shapes[1], 0, True, sym_kind)
    vec = mod.element_vector(v)
    e1v = mod.element_vector(v * eng.e1())
    # e_1 v is a multiple of the anchor; the coefficient agrees with the
    # predicted scalar up to a unit, so the two vanish on the same locus
    anchor_multiple = set(e1v) <= {mod.anchor_index}
    e1v_zero = not e1v
    return {
        "check": "submodule-witness",
        "r": r,
        "s": s,
        "kind": kind,
        "mu": _label_text(label),
        "lambda": {"first": list(lam.first.parts),
                   "second": list(lam.second.parts)},
        "field": field.spec_string(),
        "nonzero": bool(vec),
        "scalar": scalar.to_text(),
        "scalar_zero": scalar.is_zero(),
        "e1v_zero": e1v_zero,
        "anchor_multiple": anchor_multiple,
        "locus": locus,
        "ok": (bool(vec) and anchor_multiple
               and e1v_zero == scalar.is_zero()
               and scalar.is_zero() == scalar_zero_expected),
    }


# ---------------------------------------------------------------------------
# homomorphism detection

def hom_dimension(engine, source, target):
    """Dimension of the space of module maps C(source) -> C(target),
    computed from the generator intertwining equations."""
    ma = _module(engine, source)
    mb = _module(engine, target)
    f = engine.field
    d0, d1 = ma.dim, mb.dim
    ech = Echelon(f)
    for tok in engine.tokens:
        a = ma.token_matrix(tok)
        b = mb.token_matrix(tok)
        for i in range(d0):
            for k in range(d1):
                row = {}
                for m, c in a[i].items():
                    key = m * d1 + k
                    row[key] = f.raw_add(row.get(key, f.raw_from_int(0)), c)
                for j in range(d1):
                    c = b[j].get(k)
                    if c is None:
                        continue
                    key = i * d1 + j
                    row[key] = f.raw_sub(row.get(key, f.raw_from_int(0)), c)
                row = {k: c for k, c in row.items() if not f.raw_is_zero(c)}
                ech.insert(row)
    return d0 * d1 - ech.rank


# ---------------------------------------------------------------------------
# serialization

def report_to_json(report):
    """Canonical JSON for a report dictionary."""
    return json.dumps(report, sort_keys=True, separators=(",", ":"))


def grid_to_csv(rows, columns):
    """CSV summary with a fixed column order."""
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join('"%s"' % row.get(col, "") for col in columns))
    return "\n".join(lines) + "\n"
