"""Based bimodules over a calculus backend and elements of Omega^n (x)_A E.

Every module here has a finite list of generators g_i and a right action
g_i . a = twist_i(a) . g_i.  Projective modules carry an idempotent P with
g_i = sum_k P_ik g_k; elements are kept canonical by applying that relation.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .calculus import Calculus, Form


class Module:
    calc: Calculus
    gens: list
    projector = None

    def ngens(self) -> int:
        return len(self.gens)

    def twist(self, i: int, a):
        raise NotImplementedError

    def label(self, i: int) -> str:
        return str(self.gens[i])

    def canonical(self, comps: dict) -> dict:
        return comps

    def key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Module) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def zero(self, deg: int = 0) -> "TensorForm":
        return TensorForm(self, deg, {})

    def gen(self, i: int, coeff=None) -> "TensorForm":
        """The element coeff . g_i (degree 0)."""
        a = self.calc.one() if coeff is None else coeff
        return TensorForm(self, 0, {i: self.calc.func(a)})


class AlgebraModule(Module):
    """A itself, generated by 1."""

    def __init__(self, calc: Calculus):
        self.calc = calc
        self.gens = ["1"]

    def twist(self, i, a):
        return a

    def key(self):
        return ("A", id(self.calc))


class FormModule(Module):
    """Omega^n as a based bimodule (basis e_I, twist from the backend)."""

    def __init__(self, calc: Calculus, n: int = 1):
        self.calc = calc
        self.n = n
        self.gens = [calc.basis_label(n, i) for i in range(calc.dim(n))]

    def twist(self, i, a):
        return self.calc.twist(self.n, i, a)

    def key(self):
        return ("Omega", id(self.calc), self.n)


class ProjectorModule(Module):
    """Left module A^k P with generators e^i = rows of P (commutative algebras only)."""

    def __init__(self, calc: Calculus, P: Sequence[Sequence], name: str = "P"):
        if not calc.commutative:
            raise ValueError("projector modules are only supported over commutative algebras")
        self.calc = calc
        self.P = [list(r) for r in P]
        k = len(self.P)
        if any(len(r) != k for r in self.P):
            raise ValueError("projector must be square")
        zero = calc.zero()
        for i in range(k):
            for j in range(k):
                s = zero
                for m in range(k):
                    s = s + self.P[i][m] * self.P[m][j]
                if s != self.P[i][j]:
                    raise ValueError("matrix is not idempotent")
        self.projector = self.P
        self.gens = [f"{name}{i + 1}" for i in range(k)]
        self.name = name

    def twist(self, i, a):
        return a

    def canonical(self, comps):
        out = {}
        for i, w in comps.items():
            for k, p in enumerate(self.P[i]):
                if p.is_zero():
                    continue
                t = w.right(p)
                out[k] = out[k] + t if k in out else t
        return {k: w for k, w in out.items() if w.c}

    def key(self):
        return ("P", id(self.calc), self.name, tuple(tuple(r) for r in self.P))


class TensorModule(Module):
    """E_1 (x)_A ... (x)_A E_k with generators index tuples."""

    def __init__(self, factors: Sequence[Module]):
        factors = list(factors)
        if len(factors) < 2:
            raise ValueError("tensor module needs at least two factors")
        calc = factors[0].calc
        if any(f.calc is not calc for f in factors):
            raise TypeError("tensor factors over different calculus contexts")
        self.calc = calc
        self.factors = factors
        self.index = list(itertools.product(*[range(f.ngens()) for f in factors]))
        self._pos = {t: i for i, t in enumerate(self.index)}
        self.gens = ["(x)".join(f.label(j) for f, j in zip(factors, t)) for t in self.index]
        self.projector = True if any(f.projector is not None for f in factors) else None
        if self.projector is not None:
            for f in factors:
                if f.projector is None and not calc.commutative:
                    raise ValueError("mixed projective tensor products need a commutative algebra")

    def position(self, t: tuple) -> int:
        return self._pos[t]

    def twist(self, i, a):
        for f, j in reversed(list(zip(self.factors, self.index[i]))):
            a = f.twist(j, a)
        return a

    def canonical(self, comps):
        # apply each projective factor's relation in turn
        for pos, f in enumerate(self.factors):
            if f.projector is None:
                continue
            out = {}
            for i, w in comps.items():
                t = self.index[i]
                # coefficient passes the generators to the left of this factor
                for k, p in enumerate(f.projector[t[pos]]):
                    if p.is_zero():
                        continue
                    q = p
                    for f2, j2 in reversed(list(zip(self.factors[:pos], t[:pos]))):
                        q = f2.twist(j2, q)
                    nt = t[:pos] + (k,) + t[pos + 1:]
                    idx = self._pos[nt]
                    term = w.right(q)
                    out[idx] = out[idx] + term if idx in out else term
            comps = {k: w for k, w in out.items() if w.c}
        return comps

    def key(self):
        return ("T",) + tuple(f.key() for f in self.factors)


def tensor(*factors: Module) -> TensorModule:
    return TensorModule(factors)


class TensorForm:
    """sum_i w_i (x) g_i in Omega^deg (x)_A E, kept in canonical form."""

    __slots__ = ("module", "deg", "comps")

    def __init__(self, module: Module, deg: int, comps: dict, canonical: bool = True):
        self.module = module
        self.deg = deg
        comps = {i: w for i, w in comps.items() if w.c}
        for w in comps.values():
            if w.deg != deg:
                raise ValueError(f"component of degree {w.deg} in a degree-{deg} tensor form")
        if canonical and module.projector is not None:
            comps = module.canonical(comps)
        self.comps = comps

    @property
    def calc(self):
        return self.module.calc

    def _zero_form(self, deg=None):
        return Form(self.module.calc, self.deg if deg is None else deg, {})

    def _check(self, other):
        if other.module != self.module:
            raise TypeError("tensor forms over different modules")
        if other.deg != self.deg:
            raise ValueError("degree mismatch")

    def __add__(self, other):
        self._check(other)
        out = dict(self.comps)
        for i, w in other.comps.items():
            out[i] = out[i] + w if i in out else w
        return TensorForm(self.module, self.deg, out, canonical=False)

    def __neg__(self):
        return TensorForm(self.module, self.deg, {i: -w for i, w in self.comps.items()}, canonical=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return TensorForm(self.module, self.deg, {i: w.scale(s) for i, w in self.comps.items()}, canonical=False)

    def left(self, a):
        return TensorForm(self.module, self.deg, {i: w.left(a) for i, w in self.comps.items()})

    def right(self, a):
        """(sum w_i (x) g_i) . a"""
        m = self.module
        return TensorForm(m, self.deg, {i: w.right(m.twist(i, a)) for i, w in self.comps.items()})

    def wedge_left(self, w: Form) -> "TensorForm":
        """w ^ (sum v_i (x) g_i) = sum (w ^ v_i) (x) g_i"""
        return TensorForm(self.module, w.deg + self.deg, {i: w.wedge(v) for i, v in self.comps.items()})

    def is_zero(self) -> bool:
        return not self.comps

    def __bool__(self):
        return bool(self.comps)

    def __eq__(self, other):
        if not isinstance(other, TensorForm):
            return NotImplemented
        return self.module == other.module and self.deg == other.deg and self.comps == other.comps

    def __hash__(self):
        return hash((self.deg, tuple(sorted(self.comps))))

    def component(self, i: int) -> Form:
        return self.comps.get(i, self._zero_form())

    def coeffs(self):
        for w in self.comps.values():
            yield from w.coeffs()

    def substitute(self, values, target_module: Module) -> "TensorForm":
        tc = target_module.calc
        return TensorForm(target_module, self.deg, {i: w.substitute(values, tc) for i, w in self.comps.items()})

    def render(self) -> str:
        if not self.comps:
            return "0"
        return " + ".join(f"[{self.comps[i].render()}] (x) {self.module.label(i)}" for i in sorted(self.comps))

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"TensorForm[{self.deg}]({self.render()})"


# ---------------------------------------------------------------------------
# reshaping helpers
# ---------------------------------------------------------------------------

def wedge_out(x: TensorForm) -> Form:
    """Omega^n (x) Omega^m -> Omega^{n+m}, for x over a FormModule."""
    m = x.module
    if not isinstance(m, FormModule):
        raise TypeError("wedge_out needs a tensor form over a form module")
    calc = m.calc
    total = Form(calc, x.deg + m.n, {})
    for i, w in x.comps.items():
        total = total + w.wedge(calc.basis_form(m.n, i))
    return total


def absorb_first(x: TensorForm) -> TensorForm:
    """Omega^n (x) (Omega^m (x) F) -> Omega^{n+m} (x) F by wedging the first factor."""
    m = x.module
    if not isinstance(m, TensorModule) or not isinstance(m.factors[0], FormModule):
        raise TypeError("absorb_first needs a tensor module whose first factor is a form module")
    first = m.factors[0]
    rest_factors = m.factors[1:]
    rest = rest_factors[0] if len(rest_factors) == 1 else TensorModule(rest_factors)
    calc = m.calc
    out: dict = {}
    for i, w in x.comps.items():
        t = m.index[i]
        j = t[1] if len(rest_factors) == 1 else rest.position(t[1:])
        term = w.wedge(calc.basis_form(first.n, t[0]))
        out[j] = out[j] + term if j in out else term
    return TensorForm(rest, x.deg + first.n, out)


def split_first(x: TensorForm, n: int) -> TensorForm:
    """Inverse of absorb_first for the leading Omega^n factor of a tensor form of degree >= n.

    Writes each component sum_I c_I e_I (degree n, exactly) as c_I (x) e_I.
    Only degree exactly n is supported (so the output has degree 0).
    """
    if x.deg != n:
        raise ValueError("split_first only peels the full form degree")
    calc = x.module.calc
    fm = FormModule(calc, n)
    target = TensorModule([fm, x.module] if not isinstance(x.module, TensorModule) else [fm] + x.module.factors)
    out = {}
    for j, w in x.comps.items():
        jt = (j,) if not isinstance(x.module, TensorModule) else x.module.index[j]
        for I, a in w.c.items():
            out[target.position((I,) + jt)] = calc.func(a)
    return TensorForm(target, 0, out)


def reassociate(x: TensorForm, target: Module) -> TensorForm:
    """Identify generator tuples of nested tensor modules with a flat target."""
    def flat(m, i):
        if isinstance(m, TensorModule):
            out = ()
            for f, j in zip(m.factors, m.index[i]):
                out += flat(f, j)
            return out
        return (i,)

    out = {}
    for i, w in x.comps.items():
        t = flat(x.module, i)
        j = target.position(t) if isinstance(target, TensorModule) else t[0]
        out[j] = out[j] + w if j in out else w
    return TensorForm(target, x.deg, out)


def flatten_module(m: Module) -> Module:
    if not isinstance(m, TensorModule):
        return m
    fs = []
    for f in m.factors:
        f = flatten_module(f)
        fs.extend(f.factors if isinstance(f, TensorModule) else [f])
    return TensorModule(fs)
