"""The two-parameter quantized walled Brauer algebra.

The algebra on generators e_1, g_1..g_{r-1}, g*_1..g*_{s-1} is realized by
closure: starting from the identity, right multiplication by generator
tokens is explored breadth first, defining relations are imposed as exact
linear dependencies, and dependent words are eliminated.  The surviving
words form the normal basis; its size must come out to (r+s)!.

Token kinds are ("e",), ("g", i) and ("gs", j); inverses are expanded via
g^{-1} = g - (q - q^{-1}) and never appear as tokens.
"""

import json
import math
from collections import deque

from .combinat import coset_reps, s_range_word
from .groundfield import FieldElement, fields_from_spec
from .linalg import vec_axpy, vec_scale

SCHEMA_VERSION = 1

E_TOK = ("e",)


class EngineError(Exception):
    pass


def g_tok(i):
    return ("g", i)


def gs_tok(j):
    return ("gs", j)


def token_text(tok):
    return tok[0] if tok == E_TOK else "%s%d" % (tok[0], tok[1])


def token_from_text(text):
    if text == "e":
        return E_TOK
    if text.startswith("gs"):
        return gs_tok(int(text[2:]))
    if text.startswith("g"):
        return g_tok(int(text[1:]))
    raise EngineError("bad token text %r" % text)


def inv_letters(letters):
    """Inverse of a product given as (token, power) letters."""
    return [(tok, -p) for tok, p in reversed(letters)]


class AlgebraElement:
    """A vector over the engine's normal basis."""

    __slots__ = ("engine", "terms")

    def __init__(self, engine, terms):
        field = engine.field
        self.engine = engine
        self.terms = {i: c for i, c in terms.items()
                      if not field.raw_is_zero(c)}

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if self.engine is not other.engine \
                and not self.engine.same_presentation(other.engine):
            return False
        if set(self.terms) != set(other.terms):
            return False
        f = self.engine.field
        return all(f.raw_eq(c, other.terms[i]) for i, c in self.terms.items())

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __add__(self, other):
        self._check(other)
        f = self.engine.field
        out = dict(self.terms)
        for i, c in other.terms.items():
            out[i] = f.raw_add(out[i], c) if i in out else c
        return AlgebraElement(self.engine, out)

    def __neg__(self):
        f = self.engine.field
        return AlgebraElement(self.engine,
                              {i: f.raw_neg(c) for i, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        f = self.engine.field
        raw = self.engine.as_raw(c)
        return AlgebraElement(self.engine,
                              {i: f.raw_mul(cv, raw)
                               for i, cv in self.terms.items()})

    def sigma(self):
        return sigma(self)

    def _check(self, other):
        if not isinstance(other, AlgebraElement) \
                or (other.engine is not self.engine
                    and not other.engine.same_presentation(self.engine)):
            raise EngineError("operands belong to different engines")

    def __repr__(self):
        return "AlgebraElement(%d terms, dim %d)" % (
            len(self.terms), self.engine.dim)


class AlgebraEngine:
    """Normal-form model of the algebra (or a quotient of it).

    extra_relations, when given, are additional linear combinations of token
    words imposed as zero; they turn the engine into the corresponding
    quotient algebra.  expected_dim, when given, is verified after closure.
    """

    def __init__(self, r, s, field, extra_relations=None, expected_dim=None,
                 max_states=None):
        if r < 1 or s < 1:
            raise EngineError("r and s must be positive")
        self.r = r
        self.s = s
        self.field = field
        f = field
        one = f.raw_from_int(1)
        self._one_raw = one
        q = f.q().val
        self._qdiff = f.raw_sub(q, f.raw_div(one, q))
        self.tokens = [E_TOK] + [g_tok(i) for i in range(1, r)] \
            + [gs_tok(j) for j in range(1, s)]
        self.extra_relations = [
            [(self.as_raw(c), tuple(w)) for c, w in rel]
            for rel in (extra_relations or [])
        ]
        self.expected_dim = expected_dim
        if expected_dim is None and not self.extra_relations:
            self.expected_dim = math.factorial(r + s)
        self._max_states = max_states or max(
            200, 50 * (self.expected_dim or math.factorial(r + s)))
        self.relations = self._defining_relations() + self.extra_relations
        self._sigma_cache = {}
        self._build()

    # -- presentation ------------------------------------------------------

    def same_presentation(self, other):
        return (self.r, self.s, self.field) == (other.r, other.s, other.field) \
            and self.basis_words == other.basis_words

    def as_raw(self, c):
        if isinstance(c, int):
            return self.field.raw_from_int(c)
        if getattr(c, "field", None) is not None:
            return c.val
        return c

    def expand_letters(self, letters):
        """Expand (token, power) letters into [(raw coeff, token word)]."""
        f = self.field
        combos = [(self._one_raw, ())]
        for tok, p in letters:
            if p == 1:
                combos = [(c, w + (tok,)) for c, w in combos]
            elif p == -1 and tok != E_TOK:
                mqd = f.raw_neg(self._qdiff)
                new = []
                for c, w in combos:
                    new.append((c, w + (tok,)))
                    new.append((f.raw_mul(c, mqd), w))
                combos = new
            else:
                raise EngineError("bad letter power for %r" % (tok,))
        return combos

    def _defining_relations(self):
        f = self.field
        one = self._one_raw
        neg = f.raw_neg
        qd = self._qdiff
        rho = f.rho().val
        delta = f.delta().val
        r, s = self.r, self.s
        E = E_TOK
        rels = []

        def quadratic(t):
            return [(one, (t, t)), (neg(qd), (t,)), (neg(one), ())]

        def commute(a, b):
            return [(one, (a, b)), (neg(one), (b, a))]

        def braid(a, b):
            return [(one, (a, b, a)), (neg(one), (b, a, b))]

        for i in range(1, r):
            rels.append(quadratic(g_tok(i)))
        for i in range(1, r):
            for j in range(i + 2, r):
                rels.append(commute(g_tok(i), g_tok(j)))
        for i in range(1, r - 1):
            rels.append(braid(g_tok(i), g_tok(i + 1)))
        for i in range(2, r):
            rels.append(commute(g_tok(i), E))
        if r >= 2:
            rels.append([(one, (E, g_tok(1), E)), (neg(rho), (E,))])
        rels.append([(one, (E, E)), (neg(delta), (E,))])
        for i in range(1, r):
            for j in range(1, s):
                rels.append(commute(g_tok(i), gs_tok(j)))
        for j in range(1, s):
            rels.append(quadratic(gs_tok(j)))
        for i in range(1, s):
            for j in range(i + 2, s):
                rels.append(commute(gs_tok(i), gs_tok(j)))
        for j in range(1, s - 1):
            rels.append(braid(gs_tok(j), gs_tok(j + 1)))
        for j in range(2, s):
            rels.append(commute(gs_tok(j), E))
        if s >= 2:
            rels.append([(one, (E, gs_tok(1), E)), (neg(rho), (E,))])
        if r >= 2 and s >= 2:
            g1, s1 = (g_tok(1), 1), (gs_tok(1), 1)
            g1i = (g_tok(1), -1)
            e = (E, 1)
            lhs = self.expand_letters([e, g1i, s1, e, g1])
            rhs = self.expand_letters([e, g1i, s1, e, s1])
            rels.append(lhs + [(neg(c), w) for c, w in rhs])
            lhs = self.expand_letters([g1, e, g1i, s1, e])
            rhs = self.expand_letters([s1, e, g1i, s1, e])
            rels.append(lhs + [(neg(c), w) for c, w in rhs])
        return rels

    # -- closure -----------------------------------------------------------

    def _build(self):
        one = self._one_raw
        self._defs = [None]
        self._subst = {}
        self._act = {}
        self._queue = deque([0])
        while self._queue:
            st = self._queue.popleft()
            if st in self._subst:
                continue
            for rel in self.relations:
                self._impose(self._eval_relation(st, rel))
                if st in self._subst:
                    break
            if st in self._subst:
                continue
            for tok in self.tokens:
                self._act_vec(st, tok)
            if len(self._defs) > self._max_states:
                raise EngineError("closure exceeded %d states"
                                  % self._max_states)
        alive = [st for st in range(len(self._defs))
                 if st not in self._subst]
        self.dim = len(alive)
        if self.expected_dim is not None and self.dim != self.expected_dim:
            raise EngineError("closure dimension %d, expected %d"
                              % (self.dim, self.expected_dim))
        index = {st: i for i, st in enumerate(alive)}
        words = {}

        def word_of(st):
            w = words.get(st)
            if w is None:
                parent, tok = self._defs[st]
                w = word_of(parent) + (tok,)
                words[st] = w
            return w

        words[0] = ()
        self.basis_words = tuple(word_of(st) for st in alive)
        self.act_table = {}
        for st in alive:
            for tok in self.tokens:
                row = self._resolve_vec(self._act[(st, tok)])
                self.act_table[(index[st], tok)] = {
                    index[k]: c for k, c in row.items()}
        del self._defs, self._subst, self._act, self._queue

    def _act_vec(self, st, tok):
        key = (st, tok)
        v = self._act.get(key)
        if v is None:
            new = len(self._defs)
            self._defs.append((st, tok))
            v = {new: self._one_raw}
            self._act[key] = v
            self._queue.append(new)
            return v
        if any(k in self._subst for k in v):
            v = self._resolve_vec(v)
            self._act[key] = v
        return v

    def _compress(self, seeds):
        subst = self._subst
        todo = set()
        stack = list(seeds)
        while stack:
            k = stack.pop()
            if k in todo:
                continue
            todo.add(k)
            for x in subst[k]:
                if x in subst:
                    stack.append(x)
        f = self.field
        for k in sorted(todo):
            sub = subst[k]
            if any(x in subst for x in sub):
                out = {}
                for x, c in sub.items():
                    s2 = subst.get(x)
                    if s2 is None:
                        out = vec_axpy(f, out, c, {x: self._one_raw})
                    else:
                        out = vec_axpy(f, out, c, s2)
                subst[k] = out

    def _resolve_vec(self, vec):
        subst = self._subst
        dead = [k for k in vec if k in subst]
        if not dead:
            return vec
        self._compress(dead)
        f = self.field
        out = {}
        for k, c in vec.items():
            sub = subst.get(k)
            if sub is None:
                out = vec_axpy(f, out, c, {k: self._one_raw})
            else:
                out = vec_axpy(f, out, c, sub)
        return out

    def _apply_build(self, vec, tok):
        f = self.field
        vec = self._resolve_vec(vec)
        out = {}
        for st, c in vec.items():
            out = vec_axpy(f, out, c, self._act_vec(st, tok))
        return out

    def _eval_relation(self, st, rel):
        f = self.field
        total = {}
        for coeff, word in rel:
            vec = {st: self._one_raw}
            for tok in word:
                vec = self._apply_build(vec, tok)
            total = vec_axpy(f, total, coeff, vec)
        return total

    def _impose(self, vec):
        f = self.field
        pending = [vec]
        while pending:
            v = self._resolve_vec(pending.pop())
            if not v:
                continue
            m = max(v)
            if m == 0:
                raise EngineError("relations collapse the identity")
            c = v[m]
            rest = {k: cv for k, cv in v.items() if k != m}
            inv = f.raw_div(f.raw_from_int(-1), c)
            self._subst[m] = vec_scale(f, rest, inv)
            for tok in self.tokens:
                old = self._act.pop((m, tok), None)
                if old is not None:
                    new = self._apply_build(dict(self._subst[m]), tok)
                    pending.append(
                        vec_axpy(f, new, f.raw_from_int(-1), old))

    # -- element constructors ---------------------------------------------

    def element(self, terms):
        return AlgebraElement(self, {i: self.as_raw(c)
                                     for i, c in terms.items()})

    def zero(self):
        return AlgebraElement(self, {})

    def one(self):
        return self.element({0: 1})

    def apply_token(self, elem, tok, power=1):
        """Right-multiply an element by a generator token or its inverse."""
        f = self.field
        out = {}
        for i, c in elem.terms.items():
            out = vec_axpy(f, out, c, self.act_table[(i, tok)])
        res = AlgebraElement(self, out)
        if power == -1:
            if tok == E_TOK:
                raise EngineError("e_1 has no inverse")
            return res - elem.scale(self._qdiff)
        if power != 1:
            raise EngineError("token power must be +-1")
        return res

    def from_letters(self, letters):
        """Evaluate a product of (token, power) letters as an element."""
        out = self.one()
        for tok, p in letters:
            out = self.apply_token(out, tok, p)
        return out

    def e1(self):
        return self.from_letters([(E_TOK, 1)])

    def g_el(self, i, power=1):
        if not 1 <= i < self.r:
            raise EngineError("g index out of range")
        return self.from_letters([(g_tok(i), power)])

    def gs_el(self, j, power=1):
        if not 1 <= j < self.s:
            raise EngineError("g* index out of range")
        return self.from_letters([(gs_tok(j), power)])

    # -- distinguished elements -------------------------------------------

    @staticmethod
    def _g_range(i, j):
        return [(g_tok(k), 1) for k in s_range_word(i, j)]

    @staticmethod
    def _gs_range(i, j):
        return [(gs_tok(k), 1) for k in s_range_word(i, j)]

    def e_ij_letters(self, i, j):
        if not (1 <= i <= self.r and 1 <= j <= self.s):
            raise EngineError("e_{i,j} index out of range")
        return inv_letters(self._g_range(1, i)) + self._gs_range(j, 1) \
            + [(E_TOK, 1)] + self._g_range(1, i) \
            + inv_letters(self._gs_range(j, 1))

    def e_ij(self, i, j):
        return self.from_letters(self.e_ij_letters(i, j))

    def ebar_ij(self, i, j):
        if not (1 <= i <= self.r and 1 <= j <= self.s):
            raise EngineError("ebar_{i,j} index out of range")
        letters = inv_letters(self._g_range(1, i)) + self._gs_range(j, 1) \
            + [(E_TOK, 1)] + self._gs_range(1, j) \
            + inv_letters(self._g_range(i, 1))
        return self.from_letters(letters)

    def e_single(self, i):
        return self.e_ij(i, i)

    def e_cap(self, f):
        """e^f = e_1 e_2 ... e_f; e^0 is the identity."""
        if not 0 <= f <= min(self.r, self.s):
            raise EngineError("f out of range")
        out = self.one()
        for i in range(1, f + 1):
            out = out * self.e_single(i)
        return out

    def etilde12(self):
        """The idempotent rho^{-1} e_1 g*_1."""
        if self.s < 2:
            raise EngineError("needs s >= 2")
        rho_inv = 1 / self.field.rho()
        return self.from_letters([(E_TOK, 1), (gs_tok(1), 1)]).scale(rho_inv)

    def f21(self):
        """The idempotent rho^{-1} e_1 g_1."""
        if self.r < 2:
            raise EngineError("needs r >= 2")
        rho_inv = 1 / self.field.rho()
        return self.from_letters([(E_TOK, 1), (g_tok(1), 1)]).scale(rho_inv)

    def g_d(self, rep):
        """The element g_d for a coset representative."""
        return self.from_letters([(tok, 1) for tok in rep.word_pairs()])


def build_engine(r, s, field_tag, **kwargs):
    """Build the full algebra engine over a field or field-spec string."""
    field = field_tag
    if isinstance(field_tag, str):
        fields = fields_from_spec(field_tag)
        if len(fields) != 1:
            raise EngineError("field spec %r is not a single field"
                              % field_tag)
        field = fields[0]
    return AlgebraEngine(r, s, field, **kwargs)


def multiply(x, y):
    """Product in the engine; y is expanded through its basis words."""
    x._check(y)
    eng = x.engine
    f = eng.field
    out = {}
    for t, c in y.terms.items():
        vec = dict(x.terms)
        for tok in eng.basis_words[t]:
            nxt = {}
            for i, cv in vec.items():
                nxt = vec_axpy(f, nxt, cv, eng.act_table[(i, tok)])
            vec = nxt
        out = vec_axpy(f, out, c, vec)
    return AlgebraElement(eng, out)


def sigma(x):
    """The anti-involution fixing all generators."""
    eng = x.engine
    f = eng.field
    cache = eng._sigma_cache
    out = {}
    for t, c in x.terms.items():
        v = cache.get(t)
        if v is None:
            elem = eng.one()
            for tok in reversed(eng.basis_words[t]):
                elem = eng.apply_token(elem, tok)
            v = elem.terms
            cache[t] = v
        out = vec_axpy(f, out, c, v)
    return AlgebraElement(eng, out)


def special_elements(engine):
    """The distinguished elements used throughout the theory."""
    out = {}
    for i in range(1, engine.r + 1):
        for j in range(1, engine.s + 1):
            out[("e", i, j)] = engine.e_ij(i, j)
            out[("ebar", i, j)] = engine.ebar_ij(i, j)
    for i in range(1, min(engine.r, engine.s) + 1):
        out[("e", i)] = engine.e_single(i)
    for f in range(0, min(engine.r, engine.s) + 1):
        out[("ecap", f)] = engine.e_cap(f)
    if engine.s >= 2:
        out[("etilde12",)] = engine.etilde12()
    if engine.r >= 2:
        out[("f21",)] = engine.f21()
    for f in range(0, min(engine.r, engine.s) + 1):
        for rep in coset_reps(engine.r, engine.s, f):
            out[("gd", rep)] = engine.g_d(rep)
    return out


def central_element(engine, r=None, s=None):
    """The central element built from ebar summands and Murphy-type terms.

    Optional r, s restrict the sums to the front subalgebra on the first r
    row strands and s column strands; the result is then the central element
    of that subalgebra, viewed inside the ambient one.
    """
    eng = engine
    r = eng.r if r is None else r
    s = eng.s if s is None else s
    if not (1 <= r <= eng.r and 1 <= s <= eng.s):
        raise EngineError("sub-range out of bounds")
    rho = eng.field.rho()
    out = eng.zero()
    for i in range(1, r + 1):
        for j in range(1, s + 1):
            out = out + eng.ebar_ij(i, j)
    for i in range(2, r + 1):
        for j in range(1, i):
            letters = inv_letters(eng._g_range(j, i)) \
                + inv_letters(eng._g_range(i, j + 1))
            out = out - eng.from_letters(letters).scale(1 / rho)
    for i in range(2, s + 1):
        for j in range(1, i):
            letters = eng._gs_range(i, j) + eng._gs_range(j + 1, i)
            out = out - eng.from_letters(letters).scale(rho)
    return out


def verify_relations(engine):
    """Evaluate the defining relations and the derived e_i identities.

    Returns a list of (name, ok) pairs; every pair should be (..., True).
    """
    eng = engine
    f = eng.field
    r, s = eng.r, eng.s
    q = eng.field.q()
    rho = eng.field.rho()
    delta = eng.field.delta()
    one = eng.one()
    report = []

    def check(name, lhs, rhs):
        report.append((name, lhs == rhs))

    g = {i: eng.g_el(i) for i in range(1, r)}
    gi = {i: eng.g_el(i, -1) for i in range(1, r)}
    gs = {j: eng.gs_el(j) for j in range(1, s)}
    gsi = {j: eng.gs_el(j, -1) for j in range(1, s)}
    e1 = eng.e1()

    for i in range(1, r):
        check("def.a[%d]" % i,
              (g[i] - q.val * one) * (g[i] + (1 / q).val * one), eng.zero())
    for i in range(1, r):
        for j in range(i + 2, r):
            check("def.b[%d,%d]" % (i, j), g[i] * g[j], g[j] * g[i])
    for i in range(1, r - 1):
        check("def.c[%d]" % i,
              g[i] * g[i + 1] * g[i], g[i + 1] * g[i] * g[i + 1])
    for i in range(2, r):
        check("def.d[%d]" % i, g[i] * e1, e1 * g[i])
    if r >= 2:
        check("def.e", e1 * g[1] * e1, e1.scale(rho))
    check("def.f", e1 * e1, e1.scale(delta))
    for i in range(1, r):
        for j in range(1, s):
            check("def.g[%d,%d]" % (i, j), g[i] * gs[j], gs[j] * g[i])
    for j in range(1, s):
        check("def.h[%d]" % j,
              (gs[j] - q.val * one) * (gs[j] + (1 / q).val * one), eng.zero())
    for i in range(1, s):
        for j in range(i + 2, s):
            check("def.i[%d,%d]" % (i, j), gs[i] * gs[j], gs[j] * gs[i])
    for j in range(1, s - 1):
        check("def.j[%d]" % j,
              gs[j] * gs[j + 1] * gs[j], gs[j + 1] * gs[j] * gs[j + 1])
    for j in range(2, s):
        check("def.k[%d]" % j, gs[j] * e1, e1 * gs[j])
    if s >= 2:
        check("def.l", e1 * gs[1] * e1, e1.scale(rho))
    if r >= 2 and s >= 2:
        check("def.m",
              e1 * gi[1] * gs[1] * e1 * g[1],
              e1 * gi[1] * gs[1] * e1 * gs[1])
        check("def.n",
              g[1] * e1 * gi[1] * gs[1] * e1,
              gs[1] * e1 * gi[1] * gs[1] * e1)

    m = min(r, s)
    e = {i: eng.e_single(i) for i in range(1, m + 1)}
    for i in range(1, m + 1):
        for k in range(i + 1, r):
            check("tool.a.g[%d,%d]" % (i, k), e[i] * g[k], g[k] * e[i])
        for l in range(i + 1, s):
            check("tool.a.gs[%d,%d]" % (i, l), e[i] * gs[l], gs[l] * e[i])
        check("tool.b[%d]" % i, e[i] * e[i], e[i].scale(delta))
    for i in range(1, m):
        check("tool.c.g+[%d]" % i, e[i] * g[i] * e[i], e[i].scale(rho))
        check("tool.c.g-[%d]" % i, e[i] * gi[i] * e[i], e[i].scale(1 / rho))
        check("tool.c.gs+[%d]" % i, e[i] * gs[i] * e[i], e[i].scale(rho))
        check("tool.c.gs-[%d]" % i, e[i] * gsi[i] * e[i],
              e[i].scale(1 / rho))
        prod = e[i] * e[i + 1]
        check("tool.d.1[%d]" % i, e[i] * g[i] * gsi[i] * e[i], prod)
        check("tool.d.2[%d]" % i, e[i] * gs[i] * gi[i] * e[i], prod)
        check("tool.d.3[%d]" % i, e[i + 1] * e[i], prod)
        check("tool.e[%d]" % i,
              e[i] * e[i + 1] * g[i], e[i + 1] * e[i] * gs[i])
        check("tool.f[%d]" % i,
              g[i] * e[i] * e[i + 1], gs[i] * e[i + 1] * e[i])
        check("tool.eii1[%d]" % i,
              e[i] * gi[i] * gs[i] * e[i] * g[i],
              e[i] * gi[i] * gs[i] * e[i] * gs[i])
        check("tool.eii2[%d]" % i,
              g[i] * e[i] * gi[i] * gs[i] * e[i],
              gs[i] * e[i] * gi[i] * gs[i] * e[i])
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            check("tool.g[%d,%d]" % (i, j), e[i] * e[j], e[j] * e[i])
    return report


def subalgebra_maps(engine, f):
    """Token-level images for the three structural maps at level f.

    Returns a dict with the shifted copy ("shift"), the conjugated copy
    ("conjugate", needs r >= 2, only at f = 1), and the Hecke-quotient data
    ("hecke_quotient").  Each entry carries the generator images and a
    verification flag obtained by transporting the defining relations of the
    smaller algebra.
    """
    eng = engine
    r, s = eng.r, eng.s
    if not 0 <= f <= min(r, s):
        raise EngineError("f out of range")
    out = {}

    def images_ok(rels, image):
        fld = eng.field
        for rel in rels:
            total = eng.zero()
            for coeff, word in rel:
                prod = eng.one()
                for tok in word:
                    prod = prod * image[tok]
                total = total + prod.scale(coeff)
            if not total.is_zero():
                return False
        return True

    rr, ss = r - f, s - f
    if rr >= 1 and ss >= 1:
        small = AlgebraEngine(rr, ss, eng.field)
        image = {E_TOK: eng.e_single(f + 1)}
        for i in range(1, rr):
            image[g_tok(i)] = eng.g_el(f + i)
        for j in range(1, ss):
            image[gs_tok(j)] = eng.gs_el(f + j)
        out["shift"] = {"images": image,
                        "verified": images_ok(small.relations, image),
                        "target": (rr, ss)}
    else:
        out["shift"] = {"images": {}, "verified": r == s == f,
                        "target": (rr, ss)}

    if f == 1 and r >= 2:
        small = AlgebraEngine(r - 1, s, eng.field)
        image = {E_TOK: eng.g_el(1, -1) * eng.e1() * eng.g_el(1)}
        for i in range(1, r - 1):
            image[g_tok(i)] = eng.g_el(i + 1)
        for j in range(1, s):
            image[gs_tok(j)] = eng.gs_el(j)
        out["conjugate"] = {"images": image,
                            "verified": images_ok(small.relations, image),
                            "target": (r - 1, s)}

    if rr >= 1 and ss >= 1:
        # the quotient of the level-f subalgebra by its e-ideal is a tensor
        # product of two Hecke algebras; realized by adding e_1 = 0
        one_raw = eng.field.raw_from_int(1)
        quotient = AlgebraEngine(
            rr, ss, eng.field,
            extra_relations=[[(one_raw, (E_TOK,))]],
            expected_dim=math.factorial(rr) * math.factorial(ss))
        out["hecke_quotient"] = {
            "dim": quotient.dim,
            "kills_e": quotient.e1().is_zero(),
            "verified": quotient.dim == math.factorial(rr)
            * math.factorial(ss) and quotient.e1().is_zero(),
        }
    return out


# ---------------------------------------------------------------------------
# JSON export / import

def engine_to_json(engine):
    """Serialize a full engine deterministically."""
    field = engine.field
    data = {
        "schema_version": SCHEMA_VERSION,
        "r": engine.r,
        "s": engine.s,
        "field": field.spec_string(),
        "dim": engine.dim,
        "basis_words": [[token_text(t) for t in w]
                        for w in engine.basis_words],
        "act": {},
    }
    for tok in engine.tokens:
        triplets = []
        for i in range(engine.dim):
            row = engine.act_table[(i, tok)]
            for k in sorted(row):
                triplets.append([i, k, FieldElement(field, row[k]).to_text()])
        data["act"][token_text(tok)] = triplets
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def engine_from_json(text):
    """Rebuild an engine from its serialized form without re-closure."""
    data = json.loads(text)
    if data["schema_version"] != SCHEMA_VERSION:
        raise EngineError("unsupported schema version %r"
                          % data["schema_version"])
    fields = fields_from_spec(data["field"])
    if len(fields) != 1:
        raise EngineError("ambiguous field spec in export")
    field = fields[0]
    eng = AlgebraEngine.__new__(AlgebraEngine)
    eng.r = data["r"]
    eng.s = data["s"]
    eng.field = field
    one = field.raw_from_int(1)
    eng._one_raw = one
    q = field.q().val
    eng._qdiff = field.raw_sub(q, field.raw_div(one, q))
    eng.tokens = [E_TOK] + [g_tok(i) for i in range(1, eng.r)] \
        + [gs_tok(j) for j in range(1, eng.s)]
    eng.extra_relations = []
    eng.expected_dim = data["dim"]
    eng.dim = data["dim"]
    eng.relations = eng._defining_relations()
    eng._sigma_cache = {}
    eng.basis_words = tuple(
        tuple(token_from_text(t) for t in w) for w in data["basis_words"])
    eng.act_table = {}
    for tok_text_, triplets in data["act"].items():
        tok = token_from_text(tok_text_)
        rows = {i: {} for i in range(eng.dim)}
        for i, k, val in triplets:
            rows[i][k] = field.parse(val).val
        for i in range(eng.dim):
            eng.act_table[(i, tok)] = rows[i]
    return eng
