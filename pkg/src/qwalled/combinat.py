"""Partitions, bipartitions, tableaux, dominance order, nodes, and the
distinguished coset representatives indexing the arc placements.

Tableaux for the layer-f piece of the algebra carry entries f+1, ..., f+n
so that no re-indexing is needed when they meet the generators g_{f+1}, ...
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache


class CombinatError(Exception):
    pass


# ---------------------------------------------------------------------------
# partitions

class Partition:
    """A weakly decreasing tuple of positive integers."""

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        parts = tuple(int(p) for p in parts if p)
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise CombinatError("parts must be weakly decreasing: %r" % (parts,))
        if any(p < 0 for p in parts):
            raise CombinatError("parts must be positive")
        object.__setattr__(self, "parts", parts)

    def __setattr__(self, *a):
        raise AttributeError("Partition is immutable")

    @property
    def size(self):
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i] if i < len(self.parts) else 0

    def __iter__(self):
        return iter(self.parts)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return "Partition(%r)" % (self.parts,)

    def conjugate(self):
        if not self.parts:
            return Partition()
        return Partition(tuple(
            sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def partial_sums(self, length=None):
        if length is None:
            length = len(self.parts)
        sums, acc = [], 0
        for i in range(length):
            acc += self[i]
            sums.append(acc)
        return tuple(sums)

    def remove_node(self, node):
        row = node.row
        if self[row - 1] != node.col or not self.is_removable(node):
            raise CombinatError("%r is not removable from %r" % (node, self))
        parts = list(self.parts)
        parts[row - 1] -= 1
        return Partition(parts)

    def add_node(self, node):
        row = node.row
        parts = list(self.parts) + [0]
        if parts[row - 1] + 1 != node.col or not self.is_addable(node):
            raise CombinatError("%r is not addable to %r" % (node, self))
        parts[row - 1] += 1
        return Partition(parts)

    def is_removable(self, node):
        i = node.row
        return (1 <= i <= len(self.parts) and node.col == self[i - 1]
                and self[i - 1] - 1 >= self[i])

    def is_addable(self, node):
        i = node.row
        if not (1 <= i <= len(self.parts) + 1):
            return False
        prev = self[i - 2] if i >= 2 else None
        return node.col == self[i - 1] + 1 and (i == 1 or prev >= self[i - 1] + 1)

    def contains_box(self, i, j):
        return 1 <= i <= len(self.parts) and 1 <= j <= self.parts[i - 1]

    def boxes(self):
        return [(i + 1, j + 1)
                for i, p in enumerate(self.parts) for j in range(p)]


def partitions(n):
    """All partitions of n, in descending lexicographic order."""
    out = []

    def rec(rest, maxpart, prefix):
        if rest == 0:
            out.append(Partition(prefix))
            return
        for p in range(min(rest, maxpart), 0, -1):
            rec(rest - p, p, prefix + [p])
    rec(n, n if n else 1, [])
    return out


def dominance_cmp(a, b):
    """Three-valued dominance compare: 1 (a dominates), 0, -1, or None."""
    if a.size != b.size:
        raise CombinatError("dominance needs equal sizes")
    if a == b:
        return 0
    length = max(len(a), len(b))
    sa = a.partial_sums(length)
    sb = b.partial_sums(length)
    if all(x >= y for x, y in zip(sa, sb)):
        return 1
    if all(x <= y for x, y in zip(sa, sb)):
        return -1
    return None


def dominance_ge(a, b):
    if isinstance(a, Bipartition):
        return bip_dominance_cmp(a, b) in (0, 1)
    return dominance_cmp(a, b) in (0, 1)


# ---------------------------------------------------------------------------
# bipartitions and cell labels

class Bipartition:
    """A pair (lambda^(1), lambda^(2)) of partitions."""

    __slots__ = ("first", "second")

    def __init__(self, first, second):
        if not isinstance(first, Partition):
            first = Partition(first)
        if not isinstance(second, Partition):
            second = Partition(second)
        object.__setattr__(self, "first", first)
        object.__setattr__(self, "second", second)

    def __setattr__(self, *a):
        raise AttributeError("Bipartition is immutable")

    @property
    def components(self):
        return (self.first, self.second)

    @property
    def size(self):
        return (self.first.size, self.second.size)

    def conjugate(self):
        return Bipartition(self.first.conjugate(), self.second.conjugate())

    def __eq__(self, other):
        return (isinstance(other, Bipartition)
                and self.components == other.components)

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return "Bipartition(%r, %r)" % (self.first.parts, self.second.parts)


def bip_dominance_cmp(a, b):
    """Componentwise dominance compare of bipartitions, three-valued."""
    c1 = dominance_cmp(a.first, b.first)
    c2 = dominance_cmp(a.second, b.second)
    if c1 is None or c2 is None:
        return None
    if c1 == c2:
        return c1
    if 0 in (c1, c2):
        return c1 or c2
    return None


def label_cmp(a, b):
    """Compare cell labels (f, lambda): layer first, then componentwise
    dominance.  Returns 1, 0, -1 or None."""
    fa, la = a
    fb, lb = b
    if fa > fb:
        return 1
    if fa < fb:
        return -1
    return bip_dominance_cmp(la, lb)


def label_ge(a, b):
    return label_cmp(a, b) in (0, 1)


def label_sort_key(label, r, s):
    """A fixed linear extension: f descending, then partial sums
    lexicographically descending (dominant labels first)."""
    f, lam = label
    k1 = tuple(-x for x in lam.first.partial_sums(r - f))
    k2 = tuple(-x for x in lam.second.partial_sums(s - f))
    return (-f, k1, k2)


def bipartitions(n1, n2):
    return [Bipartition(p1, p2)
            for p1 in partitions(n1) for p2 in partitions(n2)]


def labels(r, s):
    """All cell labels (f, lambda) for B_{r,s}, in the fixed linear
    extension (higher labels first)."""
    out = []
    for f in range(min(r, s) + 1):
        out.extend((f, lam) for lam in bipartitions(r - f, s - f))
    out.sort(key=lambda lab: label_sort_key(lab, r, s))
    return out


# ---------------------------------------------------------------------------
# nodes

@dataclass(frozen=True)
class Node:
    row: int
    col: int
    side: int = 1

    @property
    def residue(self):
        return self.col - self.row


def nodes_removable(lam):
    """Removable nodes, ordered so that removal produces dominance-
    decreasing results (row index descending)."""
    out = []
    for i in range(len(lam.parts), 0, -1):
        if lam[i - 1] - 1 >= lam[i]:
            out.append(Node(i, lam[i - 1]))
    return out


def nodes_addable(lam):
    """Addable nodes, ordered so that addition produces dominance-
    decreasing results (row index ascending)."""
    out = [Node(1, lam[0] + 1)]
    for i in range(2, len(lam.parts) + 2):
        if lam[i - 2] >= lam[i - 1] + 1:
            out.append(Node(i, lam[i - 1] + 1))
    return out


def nodes_addable_removable(lam):
    return nodes_removable(lam), nodes_addable(lam)


def content_scalar(node, field):
    """The content scalar attached to a node; side selects the component."""
    q = field.q()
    k = node.residue
    if node.side == 1:
        return (1 - q ** (2 * k)) / (q - q ** -1)
    if node.side == 2:
        return (1 - q ** (-2 * k)) / (q ** -1 - q)
    raise CombinatError("side must be 1 or 2")


# ---------------------------------------------------------------------------
# tableaux

class StdTableau:
    """A standard tableau with entries offset+1, ..., offset+n."""

    __slots__ = ("rows", "offset")

    def __init__(self, rows, offset=0):
        rows = tuple(tuple(row) for row in rows)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "offset", offset)
        n = sum(len(row) for row in rows)
        entries = sorted(x for row in rows for x in row)
        if entries != list(range(offset + 1, offset + n + 1)):
            raise CombinatError("entries must be offset+1..offset+n")
        if not self._is_standard():
            raise CombinatError("tableau is not standard")

    def __setattr__(self, *a):
        raise AttributeError("StdTableau is immutable")

    def _is_standard(self):
        rows = self.rows
        for row in rows:
            if any(row[j] >= row[j + 1] for j in range(len(row) - 1)):
                return False
        for i in range(len(rows) - 1):
            if len(rows[i]) < len(rows[i + 1]):
                return False
            for j in range(len(rows[i + 1])):
                if rows[i][j] >= rows[i + 1][j]:
                    return False
        return True

    @property
    def shape(self):
        return Partition(len(row) for row in self.rows)

    @property
    def size(self):
        return sum(len(row) for row in self.rows)

    def entry(self, i, j):
        return self.rows[i - 1][j - 1]

    def position(self, value):
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                if x == value:
                    return (i + 1, j + 1)
        raise CombinatError("value %r not in tableau" % value)

    def restrict(self, k):
        """Remove all entries strictly bigger than k."""
        rows = [tuple(x for x in row if x <= k) for row in self.rows]
        return StdTableau([r for r in rows if r], self.offset)

    def __eq__(self, other):
        return (isinstance(other, StdTableau)
                and (self.rows, self.offset) == (other.rows, other.offset))

    def __hash__(self):
        return hash((self.rows, self.offset))

    def __repr__(self):
        return "StdTableau(%r, offset=%d)" % (self.rows, self.offset)


def t_row(lam, offset=0):
    """The row-reading tableau t^lambda."""
    rows, k = [], offset
    for p in lam.parts:
        rows.append(tuple(range(k + 1, k + p + 1)))
        k += p
    return StdTableau(rows, offset)


def t_col(lam, offset=0):
    """The column-reading tableau t_lambda."""
    cells = {}
    k = offset
    if lam.parts:
        for j in range(1, lam.parts[0] + 1):
            for i in range(1, len(lam.parts) + 1):
                if lam.contains_box(i, j):
                    k += 1
                    cells[(i, j)] = k
    rows = [tuple(cells[(i + 1, j + 1)] for j in range(p))
            for i, p in enumerate(lam.parts)]
    return StdTableau(rows, offset)


def std_tableaux(lam, offset=0):
    """All standard tableaux of a partition shape, entries offset+1.."""
    n = lam.size
    out = []

    def rec(shape_rows, filled):
        if filled == n:
            out.append(StdTableau(shape_rows, offset))
            return
        value = offset + filled + 1
        for i in range(len(lam.parts)):
            row_len = len(shape_rows[i])
            if row_len < lam.parts[i] and (i == 0
                                           or len(shape_rows[i - 1]) > row_len):
                new_rows = list(shape_rows)
                new_rows[i] = shape_rows[i] + (value,)
                rec(tuple(new_rows), filled + 1)
    rec(tuple(() for _ in lam.parts), 0)
    return out


def std_tableau_pairs(bip, offset=0):
    """Std(lambda) for a bipartition: all pairs of standard tableaux."""
    return [(t1, t2) for t1 in std_tableaux(bip.first, offset)
            for t2 in std_tableaux(bip.second, offset)]


@lru_cache(maxsize=None)
def _count_std(parts):
    lam = Partition(parts)
    if lam.size == 0:
        return 1
    return sum(_count_std(lam.remove_node(p).parts)
               for p in nodes_removable(lam))


def count_std(lam):
    """|Std(lambda)| via the removal recursion."""
    if isinstance(lam, Bipartition):
        return _count_std(lam.first.parts) * _count_std(lam.second.parts)
    return _count_std(lam.parts)


# ---------------------------------------------------------------------------
# permutations (one-line form over 1..n, optionally fixing an offset prefix)

def perm_identity(n):
    return tuple(range(1, n + 1))


def perm_mul(u, v):
    """(uv)(i) = v(u(i)): apply u first, then v."""
    return tuple(v[u[i] - 1] for i in range(len(u)))


def perm_inverse(u):
    out = [0] * len(u)
    for i, x in enumerate(u):
        out[x - 1] = i + 1
    return tuple(out)


def perm_length(u):
    return sum(1 for i in range(len(u)) for j in range(i + 1, len(u))
               if u[i] > u[j])


def reduced_word(u):
    """A reduced word [i1, i2, ...] with u = s_{i1} s_{i2} ... (bubble
    descent; indices refer to adjacent transpositions s_i = (i, i+1))."""
    u = list(u)
    word = []
    n = len(u)
    for target in range(n, 0, -1):
        pos = u.index(target)
        # move the largest remaining value to its place
        while pos + 1 < target:
            u[pos], u[pos + 1] = u[pos + 1], u[pos]
            word.append(pos + 1)
            pos += 1
    return word


def perm_from_word(word, n):
    """Product of adjacent transpositions under perm_mul, in word order.

    Right-multiplying u by s_i swaps the values i and i+1 in the one-line
    form of u.
    """
    u = list(perm_identity(n))
    for i in word:
        a, b = u.index(i), u.index(i + 1)
        u[a], u[b] = u[b], u[a]
    return tuple(u)


def d_perm(t):
    """The unique permutation w with t^lambda . w = t, as a one-line
    permutation of {1, ..., offset+n} fixing 1..offset.

    The action permutes entries: box b of t holds w(t^lambda(b))."""
    lam = t.shape
    tref = t_row(lam, t.offset)
    n = t.offset + t.size
    out = list(range(1, n + 1))
    for i, row in enumerate(tref.rows):
        for j, x in enumerate(row):
            out[x - 1] = t.rows[i][j]
    return tuple(out)


def apply_perm_to_tableau(t, w):
    rows = [tuple(w[x - 1] for x in row) for row in t.rows]
    return StdTableau(rows, t.offset)


# ---------------------------------------------------------------------------
# coset representatives

def s_range_word(i, j):
    """Word of s_{i,j}: s_{i-1}...s_j for i > j, empty for i = j,
    s_i s_{i+1} ... s_{j-1} for i < j."""
    if i > j:
        return list(range(i - 1, j - 1, -1))
    if i < j:
        return list(range(i, j))
    return []


class CosetRep:
    """Indices (i_1 < ... < i_f; j_1, ..., j_f with j_k >= k) encoding
    d = s_{f,i_f} s*_{f,j_f} ... s_{1,i_1} s*_{1,j_1}."""

    __slots__ = ("i_list", "j_list")

    def __init__(self, i_list, j_list):
        i_list = tuple(i_list)
        j_list = tuple(j_list)
        if len(i_list) != len(j_list):
            raise CombinatError("index lists must have equal length")
        if any(i_list[k] >= i_list[k + 1] for k in range(len(i_list) - 1)):
            raise CombinatError("i indices must be strictly increasing")
        if any(j_list[k] < k + 1 for k in range(len(j_list))):
            raise CombinatError("j_k >= k required")
        object.__setattr__(self, "i_list", i_list)
        object.__setattr__(self, "j_list", j_list)

    def __setattr__(self, *a):
        raise AttributeError("CosetRep is immutable")

    @property
    def f(self):
        return len(self.i_list)

    def word_pairs(self):
        """The word of g_d as a list of ('g', i) / ('gs', j) tokens,
        leftmost factor first: g_{f,i_f} g*_{f,j_f} ... g_{1,i_1} g*_{1,j_1}."""
        out = []
        for k in range(self.f, 0, -1):
            out.extend(("g", i) for i in s_range_word(k, self.i_list[k - 1]))
            out.extend(("gs", j) for j in s_range_word(k, self.j_list[k - 1]))
        return out

    def perm_pair(self, r, s):
        """The element of S_r x S_s this rep stands for."""
        u, v = perm_identity(r), perm_identity(s)
        for k in range(self.f, 0, -1):
            for i in s_range_word(k, self.i_list[k - 1]):
                u = perm_mul(u, perm_from_word([i], r))
            for j in s_range_word(k, self.j_list[k - 1]):
                v = perm_mul(v, perm_from_word([j], s))
        return (u, v)

    def __eq__(self, other):
        return (isinstance(other, CosetRep)
                and (self.i_list, self.j_list) == (other.i_list, other.j_list))

    def __hash__(self):
        return hash((self.i_list, self.j_list))

    def __repr__(self):
        return "CosetRep(%r, %r)" % (self.i_list, self.j_list)


def coset_reps(r, s, f):
    """Enumerate D^f_{r,s}; cardinality C(r,f) C(s,f) f!."""
    if not (0 <= f <= min(r, s)):
        raise CombinatError("f out of range")
    from itertools import combinations, product
    out = []
    for i_list in combinations(range(1, r + 1), f):
        for j_list in product(*(range(k + 1, s + 1) for k in range(f))):
            out.append(CosetRep(i_list, j_list))
    return out


def coset_count(r, s, f):
    return math.comb(r, f) * math.comb(s, f) * math.factorial(f)


# ---------------------------------------------------------------------------
# e-restriction and the semistandard truncation oracle

def e_restricted(bip, e):
    """True iff both components have all successive gaps < e (including the
    final part against 0).  Always true at e = infinity."""
    if e == math.inf:
        return True
    for lam in bip.components:
        for i in range(len(lam.parts)):
            if lam[i] - lam[i + 1] >= e:
                return False
    return True


def content_of_tableau(s, mu):
    """Replace each entry i of s by the row of i in t^mu."""
    tmu = t_row(mu, s.offset)
    rowof = {}
    for i, row in enumerate(tmu.rows):
        for x in row:
            rowof[x] = i + 1
    return tuple(tuple(rowof[x] for x in row) for row in s.rows)


def is_semistandard(rows):
    rows = tuple(tuple(r) for r in rows)
    for row in rows:
        if any(row[j] > row[j + 1] for j in range(len(row) - 1)):
            return False
    for i in range(len(rows) - 1):
        for j in range(len(rows[i + 1])):
            if rows[i][j] >= rows[i + 1][j]:
                return False
    return True


def semistandard_and_truncation_check(lam, mu, ss_rows, s):
    """Oracle for the truncation property of semistandard fillings.

    Requires mu to end with a part equal to 1, ss_rows to be a semistandard
    lambda-filling of content mu, and s a standard lambda-tableau whose
    content rewrite equals ss_rows.  Returns (verdict, strict) where verdict
    says shape(s restricted below its top entry) dominates nu = mu minus its
    last box, and strict marks proper dominance; equality holds exactly when
    lambda is nu plus one addable node."""
    n = lam.size
    if mu.size != n:
        raise CombinatError("sizes differ")
    if not mu.parts or mu.parts[-1] != 1:
        raise CombinatError("mu must end with a part equal to 1")
    ss_rows = tuple(tuple(r) for r in ss_rows)
    if not is_semistandard(ss_rows):
        raise CombinatError("filling is not semistandard")
    counts = {}
    for row in ss_rows:
        for x in row:
            counts[x] = counts.get(x, 0) + 1
    if counts != {i + 1: mu.parts[i] for i in range(len(mu.parts))}:
        raise CombinatError("filling content differs from mu")
    if content_of_tableau(s, mu) != ss_rows:
        raise CombinatError("s does not rewrite to the given filling")
    nu = Partition(mu.parts[:-1])
    trunc_shape = s.restrict(s.offset + n - 1).shape
    cmp_val = dominance_cmp(trunc_shape, nu)
    verdict = cmp_val in (0, 1)
    strict = cmp_val == 1
    if verdict and not strict:
        grown = any(nu.add_node(p) == lam for p in nodes_addable(nu))
        if not grown:
            raise CombinatError("equality without single-node growth")
    return verdict, strict
