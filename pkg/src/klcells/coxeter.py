"""Finite Coxeter group engine.

Elements are enumerated once by a breadth-first closure of the exact
action on positive roots (signed permutations), then handled as dense
integer ids; all per-element data is table-backed.  Crystallographic
edges (m = 2,3,4,6) use integer Cartan entries, other edges use exact
entries in Q(2cos(pi/m)).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dfield
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .numfield import QQ, AlgebraicNumber, MinPolyField

__all__ = [
    "BudgetExceeded",
    "CoxeterSystem",
    "CoxeterGroup",
    "ConjClass",
    "ParabolicSubgroup",
    "coxeter_system",
    "build_group",
    "type_a_involution_reps",
    "type_b_involution_reps",
]

DEFAULT_BUDGET = 2000

_ORDER = {
    "A": lambda n: _factorial(n + 1),
    "B": lambda n: 2**n * _factorial(n),
    "D": lambda n: 2 ** (n - 1) * _factorial(n),
    "H": lambda n: {3: 120, 4: 14400}[n],
    "F": lambda n: 1152,
    "E": lambda n: {6: 51840, 7: 2903040, 8: 696729600}[n],
}


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class CoxeterSystem:
    """A Coxeter matrix plus its exact realization data."""

    matrix: tuple            # tuple of tuples of ints, m_ss = 1
    type_label: str | None = None
    components: tuple = ()   # e.g. (("B", 3), ("A", 1))

    @property
    def rank(self):
        return len(self.matrix)

    def expected_order(self):
        if not self.components:
            return None
        out = 1
        for letter, n in self.components:
            if letter == "I":
                out *= 2 * n
            else:
                out *= _ORDER[letter](n)
        return out

    def base_field(self) -> MinPolyField:
        ms = set()
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                m = self.matrix[i][j]
                if m not in (2, 3, 4, 6):
                    ms.add(m)
        if not ms:
            return QQ
        M = 1
        for m in ms:
            M = M * m // _gcd(M, m)
        return MinPolyField(M)

    def cartan(self):
        """C with s_i(a_j) = a_j - C[i][j] a_i, exact entries."""
        F = self.base_field()
        n = self.rank
        C = [[None] * n for _ in range(n)]
        two = 2 if F is QQ else F.element(2)
        zero = 0 if F is QQ else F.element(0)
        for i in range(n):
            C[i][i] = two
            for j in range(n):
                if i == j:
                    continue
                m = self.matrix[i][j]
                if m == 2:
                    C[i][j] = zero
                elif m == 3:
                    C[i][j] = -1 if F is QQ else F.element(-1)
                elif m in (4, 6):
                    k = 2 if m == 4 else 3
                    val = (-1, -k) if i < j else (-k, -1)
                    C[i][j] = val[0] if F is QQ else F.element(val[0])
                else:
                    # -2cos(pi/m) = -D_{M/m}(2cos(pi/M))
                    C[i][j] = -F.dickson(F.m // m)
        return tuple(tuple(row) for row in C)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


_LABEL_RE = re.compile(r"^([ABDEFH])(\d+)$|^I2\((\d+)\)$", re.IGNORECASE)


def _single_matrix(letter: str, n: int):
    letter = letter.upper()
    if letter == "I":
        if n < 3:
            raise ValueError("I2(m) needs m >= 3")
        return [[1, n], [n, 1]]
    if letter == "A":
        if n < 1:
            raise ValueError("A_n needs n >= 1")
        M = [[3 if abs(i - j) == 1 else (1 if i == j else 2) for j in range(n)] for i in range(n)]
        return M
    if letter == "B":
        if n < 2:
            raise ValueError("B_n needs n >= 2")
        M = [[3 if abs(i - j) == 1 else (1 if i == j else 2) for j in range(n)] for i in range(n)]
        M[0][1] = M[1][0] = 4
        return M
    if letter == "D":
        if n < 2:
            raise ValueError("D_n needs n >= 2")
        # generators: u, s1, ..., s_{n-1}; u and s1 both bonded to s2
        M = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        for i in range(1, n - 1):
            M[i][i + 1] = M[i + 1][i] = 3
        if n >= 3:
            M[0][2] = M[2][0] = 3
        return M
    if letter == "H":
        if n not in (3, 4):
            raise ValueError("H_n needs n in {3,4}")
        M = [[3 if abs(i - j) == 1 else (1 if i == j else 2) for j in range(n)] for i in range(n)]
        M[0][1] = M[1][0] = 5
        return M
    if letter == "F":
        if n != 4:
            raise ValueError("F_n needs n = 4")
        M = [[3 if abs(i - j) == 1 else (1 if i == j else 2) for j in range(4)] for i in range(4)]
        M[1][2] = M[2][1] = 4
        return M
    if letter == "E":
        if n not in (6, 7, 8):
            raise ValueError("E_n needs n in {6,7,8}")
        # node 0 is the branch node attached to node 2 of the chain 1..n-1
        M = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        for i in range(1, n - 1):
            M[i][i + 1] = M[i + 1][i] = 3
        M[0][3] = M[3][0] = 3
        return M
    raise ValueError(f"unknown type {letter}{n}")


def coxeter_system(spec) -> CoxeterSystem:
    """Build a CoxeterSystem from a label like 'B3', 'I2(7)', 'B2xA1',
    or from an explicit symmetric Coxeter matrix."""
    if isinstance(spec, CoxeterSystem):
        return spec
    if isinstance(spec, str):
        parts = spec.strip().split("x")
        comps = []
        blocks = []
        for part in parts:
            mm = _LABEL_RE.match(part.strip())
            if not mm:
                raise ValueError(f"cannot parse group label {part!r}")
            if mm.group(3):
                comps.append(("I", int(mm.group(3))))
                blocks.append(_single_matrix("I", int(mm.group(3))))
            else:
                comps.append((mm.group(1).upper(), int(mm.group(2))))
                blocks.append(_single_matrix(mm.group(1), int(mm.group(2))))
        n = sum(len(b) for b in blocks)
        M = [[2] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i in range(len(b)):
                for j in range(len(b)):
                    M[off + i][off + j] = b[i][j]
            off += len(b)
        label = "x".join(p.strip().upper().replace("(", "(") for p in parts)
        return CoxeterSystem(tuple(tuple(r) for r in M), label, tuple(comps))
    M = [list(row) for row in spec]
    n = len(M)
    for i in range(n):
        if M[i][i] != 1:
            raise ValueError("Coxeter matrix needs 1 on the diagonal")
        for j in range(n):
            if M[i][j] != M[j][i]:
                raise ValueError("Coxeter matrix must be symmetric")
            if i != j and M[i][j] < 2:
                raise ValueError("off-diagonal entries must be >= 2")
    return CoxeterSystem(tuple(tuple(r) for r in M), None, ())


@dataclass
class ConjClass:
    index: int
    member_ids: tuple
    min_length_rep: int
    is_involution_class: bool
    element_order: int

    def __len__(self):
        return len(self.member_ids)


class CoxeterGroup:
    """Fully enumerated finite Coxeter group with table-backed queries."""

    def __init__(self, system: CoxeterSystem, budget: int = DEFAULT_BUDGET):
        self.system = system
        self.rank = system.rank
        self.field = system.base_field()
        exp = system.expected_order()
        if exp is not None and exp > budget:
            raise BudgetExceeded(
                f"group {system.type_label or system.matrix} has {exp} elements, "
                f"budget is {budget} (pass a larger budget to override)")
        self._build_roots(budget)
        self._enumerate(budget)
        self._classes = None
        self._bruhat = None
        self._reflections = None
        self._richardson = None

    # -- construction -------------------------------------------------
    def _build_roots(self, budget):
        n = self.rank
        C = self.system.cartan()
        rational = self.field is QQ
        simples = []
        for i in range(n):
            v = [0 if rational else self.field.element(0)] * n
            v[i] = 1 if rational else self.field.element(1)
            simples.append(tuple(v))
        index = {r: k for k, r in enumerate(simples)}
        roots = list(simples)
        cap = max(10 * n, 3 * budget)
        frontier = list(range(n))
        while frontier:
            new = []
            for r in frontier:
                for i in range(n):
                    img = self._reflect(C, i, roots[r])
                    if self._root_sign(img) < 0:
                        continue
                    if img not in index:
                        index[img] = len(roots)
                        roots.append(img)
                        new.append(index[img])
                        if len(roots) > cap:
                            raise BudgetExceeded(
                                "root closure exceeded cap; system is not finite "
                                "or exceeds the enumeration budget")
            frontier = new
        self.roots = roots
        self.n_positive_roots = len(roots)
        # signed action of each generator on positive roots
        self._gen_perm = []
        for i in range(n):
            perm = []
            for r, root in enumerate(roots):
                img = self._reflect(C, i, root)
                if self._root_sign(img) < 0:
                    neg = tuple(-x for x in img)
                    perm.append(-(index[neg] + 1))
                else:
                    perm.append(index[img] + 1)
            self._gen_perm.append(tuple(perm))
        self._root_support = [tuple(k for k, x in enumerate(root) if x != 0)
                              for root in roots]

    @staticmethod
    def _reflect(C, i, root):
        coef = 0
        for j, x in enumerate(root):
            if x != 0:
                coef = coef + C[i][j] * x
        new = list(root)
        new[i] = new[i] - coef
        return tuple(new)

    @staticmethod
    def _root_sign(root):
        for x in root:
            if isinstance(x, AlgebraicNumber):
                s = x.sign()
            else:
                s = (x > 0) - (x < 0)
            if s:
                return s
        raise ValueError("zero root")

    def _enumerate(self, budget):
        n = self.rank
        nr = self.n_positive_roots
        ident = tuple(range(1, nr + 1))
        perms = [ident]
        index = {ident: 0}
        words = [()]
        frontier = [0]
        gp = self._gen_perm
        while frontier:
            new = []
            for w in frontier:
                pw = perms[w]
                for s in range(n):
                    img = _compose_signed(gp[s], pw)
                    if img not in index:
                        if len(perms) >= budget:
                            raise BudgetExceeded(
                                f"enumeration exceeded budget {budget}"
                                + (f" (expected order {self.system.expected_order()})"
                                   if self.system.expected_order() else ""))
                        index[img] = len(perms)
                        perms.append(img)
                        words.append((s,) + words[w])
                        new.append(index[img])
            frontier = new
        self.size = len(perms)
        self.perms = perms
        self._index = index
        self.words = words
        self.length = np.array([sum(1 for x in p if x < 0) for p in perms], dtype=np.int32)
        # multiplication by generators
        self.lmul = np.empty((n, self.size), dtype=np.int32)
        self.rmul = np.empty((n, self.size), dtype=np.int32)
        for w, pw in enumerate(perms):
            for s in range(n):
                self.lmul[s, w] = index[_compose_signed(gp[s], pw)]
                self.rmul[s, w] = index[_compose_signed(pw, gp[s])]
        self.inverse = np.empty(self.size, dtype=np.int32)
        for w, pw in enumerate(perms):
            inv = [0] * nr
            for r, v in enumerate(pw):
                if v > 0:
                    inv[v - 1] = r + 1
                else:
                    inv[-v - 1] = -(r + 1)
            self.inverse[w] = index[tuple(inv)]
        # descent bitsets
        self.rdesc = np.zeros(self.size, dtype=np.int64)
        for w, pw in enumerate(perms):
            bits = 0
            for s in range(n):
                if pw[s] < 0:
                    bits |= 1 << s
            self.rdesc[w] = bits
        self.ldesc = self.rdesc[self.inverse]
        self.w0 = int(np.argmax(self.length))
        assert int(self.length[self.w0]) == nr, "longest element length mismatch"

    # -- elementary queries -------------------------------------------
    def mul(self, a: int, b: int) -> int:
        return self._index[_compose_signed(self.perms[a], self.perms[b])]

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conj(self, x: int, w: int) -> int:
        """x w x^-1."""
        return self.mul(self.mul(x, w), self.inv(x))

    def mul_word(self, w: int, word) -> int:
        for s in word:
            w = int(self.rmul[s, w])
        return w

    def element_of_word(self, word) -> int:
        out = 0
        for s in word:
            out = int(self.rmul[s, out])
        return out

    def order_of(self, w: int) -> int:
        k, x = 1, w
        while x != 0:
            x = self.mul(x, w)
            k += 1
        return k

    def is_involution(self, w: int) -> bool:
        """w^2 = e; by convention the identity counts as an involution here,
        matching the class-union conventions for the involution modules."""
        return self.mul(w, w) == 0

    def right_descents(self, w: int):
        return [s for s in range(self.rank) if self.rdesc[w] >> s & 1]

    def left_descents(self, w: int):
        return [s for s in range(self.rank) if self.ldesc[w] >> s & 1]

    def has_right_descent(self, w: int, s: int) -> bool:
        return bool(self.rdesc[w] >> s & 1)

    def has_left_descent(self, w: int, s: int) -> bool:
        return bool(self.ldesc[w] >> s & 1)

    def phi_length(self, weights) -> np.ndarray:
        """phi(w) = sum of weights over a reduced word, for all w."""
        out = np.zeros(self.size, dtype=np.int64)
        for w, word in enumerate(self.words):
            out[w] = sum(weights[s] for s in word)
        return out

    # -- Bruhat order ---------------------------------------------------
    def bruhat_matrix(self) -> np.ndarray:
        """Boolean matrix B[w, x] = (x <= w), built by the lifting recursion."""
        if self._bruhat is None:
            n = self.size
            B = np.zeros((n, n), dtype=bool)
            B[0, 0] = True
            order = np.argsort(self.length, kind="stable")
            for w in order:
                w = int(w)
                if w == 0:
                    continue
                s = self.left_descents(w)[0]
                sw = int(self.lmul[s, w])
                row = B[sw] | B[sw][self.lmul[s]]
                row[w] = True
                B[w] = row
            self._bruhat = B
        return self._bruhat

    def bruhat_leq(self, x: int, y: int) -> bool:
        return bool(self.bruhat_matrix()[y, x])

    # -- conjugacy classes ----------------------------------------------
    def conjugacy_classes(self):
        if self._classes is None:
            seen = np.zeros(self.size, dtype=bool)
            raw = []
            for w in range(self.size):
                if seen[w]:
                    continue
                orbit = {w}
                stack = [w]
                seen[w] = True
                while stack:
                    x = stack.pop()
                    for s in range(self.rank):
                        y = int(self.lmul[s, int(self.rmul[s, x])])
                        if not seen[y]:
                            seen[y] = True
                            orbit.add(y)
                            stack.append(y)
                raw.append(sorted(orbit))
            raw.sort(key=lambda ids: (min(int(self.length[i]) for i in ids), ids[0]))
            classes = []
            for k, ids in enumerate(raw):
                rep = min(ids, key=lambda i: (int(self.length[i]), i))
                classes.append(ConjClass(
                    index=k,
                    member_ids=tuple(ids),
                    min_length_rep=rep,
                    is_involution_class=(self.mul(rep, rep) == 0),
                    element_order=self.order_of(rep),
                ))
            self._classes = classes
            self._class_of = np.empty(self.size, dtype=np.int32)
            for cl in classes:
                for i in cl.member_ids:
                    self._class_of[i] = cl.index
        return self._classes

    def class_of(self, w: int) -> int:
        self.conjugacy_classes()
        return int(self._class_of[w])

    def involution_classes(self):
        return [cl for cl in self.conjugacy_classes() if cl.is_involution_class]

    def involutions(self):
        return [w for w in range(self.size) if self.mul(w, w) == 0]

    def generator_conjugacy_classes(self):
        """Partition of the generator set under W-conjugacy."""
        self.conjugacy_classes()
        gen_ids = [int(self.lmul[s, 0]) for s in range(self.rank)]
        buckets = {}
        for s, g in enumerate(gen_ids):
            buckets.setdefault(self.class_of(g), []).append(s)
        return sorted(buckets.values())

    def reflections(self):
        if self._reflections is None:
            gen_ids = {int(self.lmul[s, 0]) for s in range(self.rank)}
            out = set()
            for cl in self.conjugacy_classes():
                if gen_ids & set(cl.member_ids):
                    out |= set(cl.member_ids)
            self._reflections = sorted(out)
        return self._reflections

    def centralizer(self, w: int):
        return [x for x in range(self.size) if self.conj(x, w) == w]

    # -- parabolic subgroups ----------------------------------------------
    @lru_cache(maxsize=None)
    def parabolic(self, J: tuple) -> "ParabolicSubgroup":
        J = tuple(sorted(J))
        ids = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for s in J:
                y = int(self.lmul[s, x])
                if y not in ids:
                    ids.add(y)
                    stack.append(y)
        ids = tuple(sorted(ids))
        w0J = max(ids, key=lambda i: (int(self.length[i]), -i))
        return ParabolicSubgroup(parent=self, J=J, element_ids=ids, longest_element=w0J)

    def parabolic_positive_roots(self, J) -> list:
        Jset = set(J)
        return [r for r in range(self.n_positive_roots)
                if set(self._root_support[r]) <= Jset]

    def epsilon_sigma(self, sigma: int, J, w: int) -> int:
        """(-1)^k with k = #{positive roots of the J-subsystem flipped by w}.

        sigma must be the longest element of W_J and central in it, and w
        must centralize sigma.
        """
        J = tuple(sorted(J))
        par = self.parabolic(J)
        if sigma != par.longest_element:
            raise ValueError("sigma is not the longest element of W_J")
        for s in J:
            if int(self.lmul[s, sigma]) != int(self.rmul[s, sigma]):
                raise ValueError("sigma is not central in W_J")
        if self.conj(w, sigma) != sigma:
            raise ValueError("w does not centralize sigma")
        pw = self.perms[w]
        k = sum(1 for r in self.parabolic_positive_roots(J) if pw[r] < 0)
        return -1 if k % 2 else 1

    def richardson_table(self):
        """For each involution class: (sigma, J) with sigma = w0(W_J)
        central in W_J of minimal length in the class."""
        if self._richardson is None:
            table = {}
            subsets = []
            for mask in range(1 << self.rank):
                subsets.append(tuple(s for s in range(self.rank) if mask >> s & 1))
            subsets.sort(key=lambda J: (len(J), J))
            for J in subsets:
                par = self.parabolic(J)
                w0J = par.longest_element
                if w0J == 0 and J:
                    continue
                central = all(int(self.lmul[s, w0J]) == int(self.rmul[s, w0J]) for s in J)
                if not central:
                    continue
                cls = self.class_of(w0J)
                if cls not in table:
                    table[cls] = (w0J, J)
            for cl in self.conjugacy_classes():
                if cl.is_involution_class or cl.min_length_rep == 0:
                    if cl.index not in table:
                        raise RuntimeError("Richardson representative missing "
                                           f"for class {cl.index}")
                    sigma, _ = table[cl.index]
                    assert int(self.length[sigma]) == int(self.length[cl.min_length_rep])
            self._richardson = table
        return self._richardson

    def __len__(self):
        return self.size

    def __repr__(self):
        lbl = self.system.type_label or f"rank{self.rank}"
        return f"CoxeterGroup({lbl}, |W|={self.size})"


def _compose_signed(a, b):
    """(a o b)(r) = a(b(r)) on signed positive-root indices."""
    out = []
    for v in b:
        if v > 0:
            out.append(a[v - 1])
        else:
            out.append(-a[-v - 1])
    return tuple(out)


@dataclass
class ParabolicSubgroup:
    parent: CoxeterGroup
    J: tuple
    element_ids: tuple
    longest_element: int
    _native: object = dfield(default=None, repr=False)

    def __hash__(self):
        return hash((id(self.parent), self.J))

    @property
    def native(self):
        """The same parabolic built as a standalone CoxeterGroup, with
        embedding maps in both directions."""
        if self._native is None:
            sub = [[self.parent.system.matrix[i][j] for j in self.J] for i in self.J]
            label = None
            sys = CoxeterSystem(tuple(tuple(r) for r in sub), label, ())
            g = CoxeterGroup(sys, budget=max(DEFAULT_BUDGET, len(self.element_ids)))
            to_parent = np.empty(g.size, dtype=np.int32)
            for w in range(g.size):
                pid = 0
                for s in g.words[w]:
                    pid = int(self.parent.rmul[self.J[s], pid])
                to_parent[w] = pid
            assert len(set(int(x) for x in to_parent)) == g.size
            assert set(int(x) for x in to_parent) == set(self.element_ids)
            from_parent = {int(p): w for w, p in enumerate(to_parent)}
            self._native = (g, to_parent, from_parent)
        return self._native

    def fusion_map(self):
        """native conjugacy class index -> parent conjugacy class index."""
        g, to_parent, _ = self.native
        return [self.parent.class_of(int(to_parent[cl.min_length_rep]))
                for cl in g.conjugacy_classes()]


def build_group(spec, budget: int = DEFAULT_BUDGET) -> CoxeterGroup:
    return CoxeterGroup(coxeter_system(spec), budget=budget)


# ---------------------------------------------------------------------------
# labelled involution representatives in classical types


def type_a_involution_reps(group: CoxeterGroup):
    """A_{n-1} on n points: sigma_j = s1 s3 ... s_{2j-1}, 0 <= 2j <= n.

    Returns {j: element id}; each sigma_j has minimal length in its class.
    """
    n = group.rank + 1
    out = {}
    for j in range(n // 2 + 1):
        word = [2 * i for i in range(j)]     # s_{2i+1} is generator index 2i
        out[j] = group.element_of_word(word)
    return out


def type_b_involution_reps(group: CoxeterGroup):
    """B_n with generators t, s1, ..., s_{n-1}:
    sigma_{l,j} = t_1...t_l s_{l+1} s_{l+3} ... s_{l+2j-1}, l + 2j <= n.

    t_1 = t and t_{i+1} = s_i t_i s_i.  Returns {(l, j): element id}.
    """
    n = group.rank
    t_elems = [None] * (n + 1)
    t_elems[1] = group.element_of_word([0])
    for i in range(2, n + 1):
        s = i - 1                            # s_{i-1} is generator index i-1
        t_elems[i] = group.conj(group.element_of_word([s]), t_elems[i - 1])
    out = {}
    for l in range(n + 1):
        for j in range((n - l) // 2 + 1):
            w = 0
            for i in range(1, l + 1):
                w = group.mul(w, t_elems[i])
            for i in range(j):
                w = group.mul(w, group.element_of_word([l + 2 * i + 1]))
            out[(l, j)] = w
    return out
