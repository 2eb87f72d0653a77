"""Bicovariant calculi on finite groups and their Woronowicz exterior algebras."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .conncore.calculus import Calculus, Form
from .exactalg import QQ, ExactMatrix, PolyRing, RatFunc, kernel, rref
from .exactalg.matrix import rank as matrix_rank


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------

class FiniteGroup:
    """Group given by its multiplication table; validated on construction."""

    def __init__(self, labels: Sequence[str], table: Sequence[Sequence[int]], name: str = "G"):
        self.labels = tuple(labels)
        self.table = tuple(tuple(r) for r in table)
        self.name = name
        n = len(self.labels)
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise ValueError("multiplication table has the wrong shape")
        ident = [i for i in range(n) if all(self.table[i][j] == j and self.table[j][i] == j for j in range(n))]
        if len(ident) != 1:
            raise ValueError("no unique identity element")
        self.identity = ident[0]
        inv = []
        for i in range(n):
            cands = [j for j in range(n) if self.table[i][j] == self.identity]
            if len(cands) != 1 or self.table[cands[0]][i] != self.identity:
                raise ValueError(f"element {self.labels[i]} has no two-sided inverse")
            inv.append(cands[0])
        self.inverse = tuple(inv)
        for a, b, c in itertools.product(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise ValueError("multiplication is not associative")
        self._index = {l: i for i, l in enumerate(self.labels)}

    def __len__(self):
        return len(self.labels)

    def index(self, label: str) -> int:
        return self._index[label]

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, a: int, b: int) -> int:
        """a b a^-1"""
        return self.mul(self.mul(a, b), self.inv(a))

    def product(self, elems: Sequence[int]) -> int:
        g = self.identity
        for x in elems:
            g = self.mul(g, x)
        return g

    @classmethod
    def from_permutations(cls, perms: dict[str, tuple], name: str = "G") -> "FiniteGroup":
        labels = list(perms)
        lookup = {p: l for l, p in perms.items()}
        table = []
        for a in labels:
            row = []
            for b in labels:
                pa, pb = perms[a], perms[b]
                comp = tuple(pa[pb[k]] for k in range(len(pa)))
                row.append(labels.index(lookup[comp]))
            table.append(row)
        return cls(labels, table, name)

    @classmethod
    def symmetric3(cls) -> "FiniteGroup":
        # u = (12), v = (23), w = uvu = (13); uv and vu are the 3-cycles
        perms = {
            "e": (0, 1, 2),
            "u": (1, 0, 2),
            "v": (0, 2, 1),
            "w": (2, 1, 0),
        }
        u, v = perms["u"], perms["v"]
        perms["uv"] = tuple(u[v[k]] for k in range(3))
        perms["vu"] = tuple(v[u[k]] for k in range(3))
        return cls.from_permutations(perms, "S3")

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        labels = ["e"] + [f"g{k}" if k > 1 else "g" for k in range(1, n)]
        table = [[(i + j) % n for j in range(n)] for i in range(n)]
        return cls(labels, table, f"Z{n}")

    @classmethod
    def named(cls, name: str) -> "FiniteGroup":
        if name == "S3":
            return cls.symmetric3()
        if name.startswith("Z_") or (name.startswith("Z") and name[1:].isdigit()):
            return cls.cyclic(int(name.lstrip("Z_")))
        raise KeyError(f"unknown built-in group {name!r}")


@dataclass(frozen=True)
class CalculusSpec:
    """Conjugation-stable generating set, listed in the declared label order."""

    group: FiniteGroup
    generators: tuple[int, ...]
    cap: int = 8

    def __post_init__(self):
        g = self.group
        gens = set(self.generators)
        if len(gens) != len(self.generators):
            raise ValueError("repeated generator")
        if g.identity in gens:
            raise ValueError("the identity cannot be a generator")
        for a in self.generators:
            for h in range(len(g)):
                if g.conj(h, a) not in gens:
                    raise ValueError(
                        f"generating set not conjugation stable: {g.labels[h]} {g.labels[a]} {g.labels[h]}^-1 missing"
                    )

    @classmethod
    def from_labels(cls, group: FiniteGroup, labels: Sequence[str], cap: int = 8) -> "CalculusSpec":
        return cls(group, tuple(group.index(l) for l in labels), cap)


# ---------------------------------------------------------------------------
# exterior algebra
# ---------------------------------------------------------------------------

class ExteriorAlgebra:
    """Invariant part of the Woronowicz exterior algebra of a calculus.

    Words are tuples of generator positions (0..k-1).  ``bases[n]`` lists the
    canonical degree-n words; ``nf(word)`` gives the coordinates of any word.
    """

    def __init__(self, spec: CalculusSpec):
        self.spec = spec
        g = spec.group
        gens = spec.generators
        k = len(gens)
        self.k = k
        self.labels = tuple(g.labels[a] for a in gens)
        pos = {a: i for i, a in enumerate(gens)}
        # braiding on V (x) V: e_a (x) e_b -> e_{a b a^-1} (x) e_a
        self.psi_perm = {}
        for a in range(k):
            for b in range(k):
                c = pos[g.conj(gens[a], gens[b])]
                self.psi_perm[(a, b)] = (c, a)
        rows = []
        for a in range(k):
            for b in range(k):
                row = [0] * (k * k)
                row[a * k + b] += 1
                c, d = self.psi_perm[(a, b)]
                row[c * k + d] -= 1
                rows.append(row)
        # ker(id - Psi): columns of the matrix are images of basis vectors
        m = ExactMatrix(PolyRing((), QQ), [list(r) for r in zip(*rows)])
        self.relations = []
        for vec in kernel(m):
            rel = {}
            for idx, x in enumerate(vec):
                if x:
                    rel[(idx // k, idx % k)] = x.constant_value()
            self.relations.append(rel)
        self.bases: list[list[tuple]] = [[()], [(a,) for a in range(k)]]
        self._nf: dict[tuple, dict[int, Fraction]] = {(): {0: Fraction(1)}}
        for a in range(k):
            self._nf[(a,)] = {a: Fraction(1)}
        self._reduce: list[dict] = [{}, {}]
        self._index = [{(): 0}, {(a,): a for a in range(k)}]
        self.truncated = False
        n = 2
        while True:
            if n > spec.cap:
                self.truncated = True
                break
            basis, reduce = self._build_degree(n)
            if not basis:
                break
            self.bases.append(basis)
            self._reduce.append(reduce)
            self._index.append({w: i for i, w in enumerate(basis)})
            n += 1
        if self.k == 0:
            self.bases, self._index = [[()]], [{(): 0}]
        self.top_degree = len(self.bases) - 1
        self._wedge_cache: dict = {}
        self.gdeg = [[g.product([gens[a] for a in w]) for w in b] for b in self.bases]

    # degree n as quotient of Lambda^{n-1} (x) V by Lambda^{n-2} (x) Rel
    def _build_degree(self, n: int):
        k = self.k
        prev = self.bases[n - 1]
        cand = [w + (a,) for w in prev for a in range(k)]
        cidx = {w: i for i, w in enumerate(cand)}
        rows = []
        for u in self.bases[n - 2]:
            for rel in self.relations:
                row = [Fraction(0)] * len(cand)
                for (x, y), c in rel.items():
                    for bi, c2 in self.nf(u + (x,)).items():
                        row[cidx[prev[bi] + (y,)]] += c * c2
                if any(row):
                    rows.append(row)
        if not cand:
            return [], {}
        if rows:
            red, piv = rref(ExactMatrix(PolyRing((), QQ), rows))
        else:
            red, piv = None, ()
        pivset = set(piv)
        basis = [cand[i] for i in range(len(cand)) if i not in pivset]
        bidx = {w: i for i, w in enumerate(basis)}
        reduce = {}
        for r, p in enumerate(piv):
            expr = {}
            for f in range(len(cand)):
                if f in pivset:
                    continue
                x = red.rows[r][f]
                if x:
                    expr[bidx[cand[f]]] = -x.constant_value()
            reduce[cand[p]] = expr
        for w in basis:
            self._nf[w] = {bidx[w]: Fraction(1)}
        return basis, reduce

    def dim(self, n: int) -> int:
        return len(self.bases[n]) if 0 <= n < len(self.bases) else 0

    def dims(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.bases)

    def nf(self, word: tuple) -> dict[int, Fraction]:
        """Coordinates of the product of the word's generators in the canonical basis."""
        word = tuple(word)
        hit = self._nf.get(word)
        if hit is not None:
            return hit
        n = len(word)
        if n >= len(self.bases):
            self._nf[word] = {}
            return {}
        head = self.nf(word[:-1])
        last = word[-1]
        prev = self.bases[n - 1]
        out: dict[int, Fraction] = {}
        idx = self._index[n]
        red = self._reduce[n]
        for bi, c in head.items():
            w = prev[bi] + (last,)
            if w in idx:
                out[idx[w]] = out.get(idx[w], 0) + c
            else:
                for j, c2 in red[w].items():
                    out[j] = out.get(j, 0) + c * c2
        out = {j: c for j, c in out.items() if c}
        self._nf[word] = out
        return out

    def word_of(self, labels: Sequence[str]) -> tuple:
        return tuple(self.labels.index(l) for l in labels)

    def wedge_basis(self, n: int, i: int, m: int, j: int) -> dict[int, Fraction]:
        key = (n, i, m, j)
        hit = self._wedge_cache.get(key)
        if hit is None:
            if n + m > self.top_degree:
                hit = {}
            else:
                hit = self.nf(self.bases[n][i] + self.bases[m][j])
            self._wedge_cache[key] = hit
        return hit

    def psi_matrix(self) -> list[list[int]]:
        k = self.k
        mat = [[0] * (k * k) for _ in range(k * k)]
        for (a, b), (c, d) in self.psi_perm.items():
            mat[c * k + d][a * k + b] = 1
        return mat

    def basis_label(self, n: int, i: int) -> str:
        if n == 0:
            return "1"
        return "^".join(f"e_{self.labels[a]}" for a in self.bases[n][i])


def build_calculus(spec: CalculusSpec) -> ExteriorAlgebra:
    return ExteriorAlgebra(spec)


# ---------------------------------------------------------------------------
# function algebra and the calculus backend
# ---------------------------------------------------------------------------

class GFunc:
    """Function on a finite group with RatFunc values (tuple indexed by element)."""

    __slots__ = ("v",)

    def __init__(self, values):
        self.v = tuple(values)

    def __add__(self, o):
        return GFunc(x + y for x, y in zip(self.v, o.v))

    def __sub__(self, o):
        return GFunc(x - y for x, y in zip(self.v, o.v))

    def __neg__(self):
        return GFunc(-x for x in self.v)

    def __mul__(self, o):
        return GFunc(x * y for x, y in zip(self.v, o.v))

    def scale(self, s):
        return GFunc(x * s for x in self.v)

    def is_zero(self):
        return not any(x.num.terms for x in self.v)

    def __eq__(self, o):
        return isinstance(o, GFunc) and self.v == o.v

    def __hash__(self):
        return hash(self.v)

    def is_constant(self):
        return all(x == self.v[0] for x in self.v)

    def __repr__(self):
        return f"GFunc({[str(x) for x in self.v]})"


class GroupCalculus(Calculus):
    """Omega = k(G) (x) Lambda with d = [theta, .} (graded commutator)."""

    commutative = True
    finite_dimensional = True

    def __init__(self, spec: CalculusSpec, ring: PolyRing | None = None, ext: ExteriorAlgebra | None = None):
        self.spec = spec
        self.group = spec.group
        self.ext = ext if ext is not None else build_calculus(spec)
        self.ring = ring if ring is not None else PolyRing((), QQ)
        self.top_degree = self.ext.top_degree
        self.name = f"{self.group.name}{list(self.ext.labels)}"
        n = len(self.group)
        self._zero_rf = RatFunc.const(self.ring, 0)
        self._one_rf = RatFunc.const(self.ring, 1)
        # right translation tables: shift[h][x] = x h
        self._shift = [[self.group.mul(x, h) for x in range(n)] for h in range(n)]
        self._d_basis_cache: dict = {}
        self._theta = Form(self, 1, {a: self.one() for a in range(self.ext.k)}) if self.ext.k else None

    # -- algebra -------------------------------------------------------------------
    def zero(self):
        return GFunc([self._zero_rf] * len(self.group))

    def one(self):
        return GFunc([self._one_rf] * len(self.group))

    def const(self, c):
        return GFunc([self.coerce_scalar(c)] * len(self.group))

    def delta(self, g: int, c=1):
        z, s = self._zero_rf, self.coerce_scalar(c)
        return GFunc([s if x == g else z for x in range(len(self.group))])

    def function(self, values) -> GFunc:
        return GFunc(self.coerce_scalar(x) for x in values)

    def shift(self, h: int, f: GFunc) -> GFunc:
        """R_h(f)(x) = f(x h)."""
        t = self._shift[h]
        return GFunc(f.v[t[x]] for x in range(len(self.group)))

    def twist(self, n, i, a):
        if n == 0:
            return a
        h = self.ext.gdeg[n][i]
        if h == self.group.identity:
            return a
        return self.shift(h, a)

    def alg_coeffs(self, a):
        return a.v

    def render_alg(self, a):
        if a.is_constant():
            return str(a.v[0])
        labs = self.group.labels
        return "{" + ", ".join(f"{labs[x]}:{a.v[x]}" for x in range(len(a.v)) if a.v[x]) + "}"

    def probes(self):
        return [self.delta(g) for g in range(len(self.group))]

    def random_alg(self, rng, support: int = 2, lo: int = -3, hi: int = 3):
        vals = [0] * len(self.group)
        for g in rng.sample(range(len(self.group)), min(support, len(self.group))):
            vals[g] = rng.randint(lo, hi)
        return self.function(vals)

    def substitute_alg(self, a, values, target):
        return GFunc(x.substitute(values, target.ring) for x in a.v)

    def specialize(self, values, ring):
        return GroupCalculus(self.spec, ring, self.ext)

    # -- graded structure --------------------------------------------------------------
    def dim(self, n):
        return self.ext.dim(n)

    def basis_label(self, n, i):
        return self.ext.basis_label(n, i)

    def wedge_basis(self, n, i, m, j):
        return {k: RatFunc.const(self.ring, c) for k, c in self.ext.wedge_basis(n, i, m, j).items()}

    def d_alg(self, a):
        out = {}
        for b, h in enumerate(self.spec.generators):
            c = self.shift(h, a) - a
            if not c.is_zero():
                out[b] = c
        return Form(self, 1, out)

    def d_basis(self, n, i):
        hit = self._d_basis_cache.get((n, i))
        if hit is None:
            if not self.has_degree(n + 1) or self._theta is None:
                hit = Form(self, n + 1, {})
            else:
                # graded commutator with theta
                e = self.basis_form(n, i)
                hit = self._theta.wedge(e) + e.wedge(self._theta).scale(-1 if n % 2 == 0 else 1)
            self._d_basis_cache[(n, i)] = hit
        return hit

    def theta(self) -> Form:
        return self._theta

    def one_form_presentation(self, b):
        # e_b = sum_y delta_y d(delta_{y b})
        h = self.spec.generators[b]
        return [(self.delta(y), self.delta(self.group.mul(y, h))) for y in range(len(self.group))]

    def wedge_kernel(self):
        one = self.one()
        out = []
        for rel in self.ext.relations:
            out.append({pair: one.scale(self.coerce_scalar(c)) for pair, c in rel.items()})
        return out

    def split_basis(self, n, i):
        w = self.ext.bases[n][i]
        rest = self.ext.nf(w[1:])
        return w[0], Form(self, n - 1, {j: self.const(c) for j, c in rest.items()})

    # -- helpers for building forms from words ---------------------------------------------
    def word(self, labels: Sequence[str], coeff=None) -> Form:
        """Form for e_{l1} ^ ... ^ e_{ln} times an optional left coefficient."""
        w = self.ext.word_of(labels)
        n = len(w)
        a = self.one() if coeff is None else coeff
        if not self.has_degree(n):
            return Form(self, n, {})
        return Form(self, n, {j: a.scale(self.coerce_scalar(c)) for j, c in self.ext.nf(w).items()})

    def gen_index(self, label: str) -> int:
        return self.ext.labels.index(label)


# ---------------------------------------------------------------------------
# cycles and cohomology
# ---------------------------------------------------------------------------

@dataclass
class Cycle:
    """Linear functional on Omega^n: sum_I sum_x weights[I][x] * c_I(x)."""

    calc: GroupCalculus
    degree: int
    weights: dict[int, tuple] = field(default_factory=dict)
    name: str = "cycle"

    def __call__(self, w: Form) -> RatFunc:
        if w.deg != self.degree:
            raise ValueError("cycle applied to a form of the wrong degree")
        total = RatFunc.const(self.calc.ring, 0)
        for i, a in w.c.items():
            wt = self.weights.get(i)
            if wt is None:
                continue
            for x, c in zip(a.v, wt):
                if c and x:
                    total = total + x * c
        return total


def sum_over_group_cycle(calc: GroupCalculus, top_word: Sequence[str] | None = None) -> Cycle:
    """Integral with  int f.Vol = sum_g f(g), Vol given as a top-degree word."""
    n = calc.top_degree
    vol = calc.word(top_word) if top_word is not None else calc.basis_form(n, 0)
    if vol.deg != n or len(vol.c) != 1:
        raise ValueError("volume word must be a nonzero multiple of the top basis element")
    (i, a), = vol.c.items()
    s = a.v[0].constant_value()
    wt = tuple(Fraction(1) / s for _ in range(len(calc.group)))
    return Cycle(calc, n, {i: wt}, "sum")


def evaluation_cycle(calc: GroupCalculus, at: int | None = None) -> Cycle:
    """int f.Vol = f(at); not a cycle in general (negative control)."""
    g = calc.group.identity if at is None else at
    n = calc.top_degree
    wt = tuple(Fraction(1) if x == g else Fraction(0) for x in range(len(calc.group)))
    return Cycle(calc, n, {0: wt}, "evaluation")


@dataclass
class CycleCheck:
    ok: bool
    witness: str = ""


def _vector_basis(calc: GroupCalculus, n: int) -> list[Form]:
    out = []
    for i in range(calc.dim(n)):
        for x in range(len(calc.group)):
            out.append(calc.basis_form(n, i, calc.delta(x)))
    return out


def cycle_verify(phi: Cycle) -> CycleCheck:
    """Closedness on exact forms and graded symmetry on all basis pairs."""
    calc = phi.calc
    n = phi.degree
    if n > calc.top_degree:
        raise ValueError("cycle degree exceeds top degree")
    if n >= 1:
        for xi in _vector_basis(calc, n - 1):
            val = phi(xi.d())
            if val:
                return CycleCheck(False, f"int d({xi.render()}) = {val}")
    bases = {p: _vector_basis(calc, p) for p in range(n + 1)}
    for p in range(n + 1):
        q = n - p
        sign = -1 if (p * q) % 2 else 1
        for w in bases[p]:
            for r in bases[q]:
                lhs = phi(w.wedge(r))
                rhs = phi(r.wedge(w)) * sign
                if lhs != rhs:
                    return CycleCheck(False, f"int w^r = {lhs} but sign*int r^w = {rhs} for w={w.render()}, r={r.render()}")
    return CycleCheck(True)


def form_vector(w: Form, n_group: int, dim: int) -> list:
    """Flatten a form into coordinates indexed by (basis index, group element)."""
    ring = w.calc.ring
    zero = RatFunc.const(ring, 0)
    vec = [zero] * (dim * n_group)
    for i, a in w.c.items():
        for x, c in enumerate(a.v):
            vec[i * n_group + x] = c
    return vec


def d_matrix(calc: GroupCalculus, n: int) -> ExactMatrix:
    """Matrix of d: Omega^n -> Omega^{n+1} in the delta_x e_I bases (columns = sources)."""
    ng = len(calc.group)
    cols = []
    for i in range(calc.dim(n)):
        for x in range(ng):
            cols.append(form_vector(calc.basis_form(n, i, calc.delta(x)).d(), ng, calc.dim(n + 1)))
    if not cols:
        return ExactMatrix.zeros(calc.ring, calc.dim(n + 1) * ng, 0)
    return ExactMatrix(calc.ring, [list(r) for r in zip(*cols)]) if cols[0] else ExactMatrix.zeros(calc.ring, 0, len(cols))


def subquotient(ker_basis: list[list], image_cols: list[list], ring) -> list[list]:
    """Vectors from ker_basis completing a basis of image to a basis of span(ker)."""
    reps = []
    current = [list(v) for v in image_cols]
    r0 = matrix_rank(ExactMatrix(ring, current)) if current else 0
    for v in ker_basis:
        trial = current + [list(v)]
        r = matrix_rank(ExactMatrix(ring, trial))
        if r > r0:
            reps.append(v)
            current = trial
            r0 = r
    return reps


def de_rham(calc: GroupCalculus, n: int) -> tuple[int, list[Form]]:
    """Dimension of H^n and representative closed forms."""
    if n < 0 or n > calc.top_degree:
        return 0, []
    ng = len(calc.group)
    dn = d_matrix(calc, n)
    if calc.has_degree(n + 1) and dn.nrows:
        kb = kernel(dn)
    else:
        kb = [[RatFunc.const(calc.ring, 1 if j == i else 0) for j in range(calc.dim(n) * ng)] for i in range(calc.dim(n) * ng)]
    if n >= 1:
        dm = d_matrix(calc, n - 1)
        image = [list(c) for c in zip(*dm.rows)] if dm.nrows else []
        image = [c for c in image if any(c)]
    else:
        image = []
    reps = subquotient(kb, image, calc.ring)
    forms = []
    for v in reps:
        coeffs = {}
        for i in range(calc.dim(n)):
            vals = v[i * ng:(i + 1) * ng]
            coeffs[i] = GFunc(vals)
        forms.append(Form(calc, n, coeffs))
    return len(reps), forms


def in_span(vectors: list[list], target: list, ring) -> bool:
    if not vectors:
        return not any(target)
    r = matrix_rank(ExactMatrix(ring, vectors))
    return matrix_rank(ExactMatrix(ring, vectors + [list(target)])) == r


def load_calculus_config(cfg: dict) -> GroupCalculus:
    """Build a calculus from a declarative mapping.

    Keys: ``group`` (built-in name) or ``table`` + ``labels``; ``generators``
    (labels in the declared order); optional ``cap``.
    """
    if "table" in cfg:
        group = FiniteGroup(cfg["labels"], cfg["table"], cfg.get("name", "G"))
    else:
        group = FiniteGroup.named(cfg["group"])
    spec = CalculusSpec.from_labels(group, cfg["generators"], int(cfg.get("cap", 8)))
    return GroupCalculus(spec)
