"""Backend protocol for a differential calculus with free left-module form spaces.

A backend supplies, for each degree n, a finite basis {e_I} of Omega^n as a free
left module over its coefficient algebra A, together with:

* a twist per basis element: e_I . a = twist(n, I, a) . e_I;
* wedge structure constants e_I ^ e_J = sum_K s_K e_K with central scalars s_K;
* d on algebra elements and on basis forms.

Algebra elements are backend objects supporting ``+``, ``-``, ``*`` (algebra
product), ``scale`` by a RatFunc, ``is_zero``, ``coeffs`` and ``substitute``.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from ..exactalg import PolyRing, RatFunc


class Calculus:
    """Abstract calculus backend; see module docstring for the contract."""

    ring: PolyRing
    name: str = "calculus"
    top_degree: int | None = None
    commutative: bool = False
    finite_dimensional: bool = False

    # -- graded bases -----------------------------------------------------------
    def dim(self, n: int) -> int:
        raise NotImplementedError

    def basis_label(self, n: int, i: int) -> str:
        raise NotImplementedError

    # -- algebra ----------------------------------------------------------------
    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def scalar(self, c):
        """Central scalar (RatFunc or field element) as an algebra element."""
        return self.one().scale(self.coerce_scalar(c))

    def coerce_scalar(self, c) -> RatFunc:
        if isinstance(c, RatFunc):
            if c.ring != self.ring:
                raise TypeError("scalar from a different coefficient ring")
            return c
        return RatFunc.const(self.ring, c)

    def twist(self, n: int, i: int, a):
        raise NotImplementedError

    def alg_coeffs(self, a) -> Iterable[RatFunc]:
        raise NotImplementedError

    def render_alg(self, a) -> str:
        return str(a)

    def probes(self) -> list:
        """Algebra elements against which module-map identities are tested.

        Either a linear basis (finite-dimensional algebras) or a set of algebra
        generators, so identities that are multiplicative extend to all of A.
        """
        raise NotImplementedError

    def random_alg(self, rng, support: int = 2):
        raise NotImplementedError

    # -- structure maps -----------------------------------------------------------
    def wedge_basis(self, n: int, i: int, m: int, j: int) -> dict[int, RatFunc]:
        raise NotImplementedError

    def d_alg(self, a) -> "Form":
        raise NotImplementedError

    def d_basis(self, n: int, i: int) -> "Form":
        raise NotImplementedError

    def one_form_presentation(self, b: int) -> list[tuple[object, object]]:
        """Pairs (a_k, f_k) with e_b = sum_k a_k . d f_k."""
        raise NotImplementedError

    def wedge_kernel(self) -> list[dict[tuple[int, int], object]]:
        """Left-module spanning set of ker(^ : Omega^1 (x) Omega^1 -> Omega^2)."""
        raise NotImplementedError

    def split_basis(self, n: int, i: int) -> tuple[int, "Form"]:
        """(b, rest) with e_I = e_b ^ rest, rest of degree n - 1."""
        raise NotImplementedError

    def substitute_alg(self, a, values, target: "Calculus"):
        raise NotImplementedError

    def specialize(self, values, ring: PolyRing) -> "Calculus":
        """Same calculus over another coefficient ring (for family substitution)."""
        raise NotImplementedError

    # -- convenience ----------------------------------------------------------------
    def has_degree(self, n: int) -> bool:
        return n >= 0 and self.dim(n) > 0

    def form(self, n: int, coeffs: dict | None = None) -> "Form":
        return Form(self, n, coeffs or {})

    def basis_form(self, n: int, i: int, coeff=None) -> "Form":
        a = self.one() if coeff is None else coeff
        return Form(self, n, {i: a})

    def func(self, a) -> "Form":
        return Form(self, 0, {0: a} if not a.is_zero() else {})

    def d(self, w: "Form") -> "Form":
        return w.d()


class Form:
    """Element sum_I c_I e_I of Omega^n with left coefficients c_I in A."""

    __slots__ = ("calc", "deg", "c")

    def __init__(self, calc: Calculus, deg: int, coeffs: dict):
        self.calc = calc
        self.deg = deg
        self.c = {i: a for i, a in coeffs.items() if not a.is_zero()}

    @classmethod
    def _raw(cls, calc, deg, coeffs):
        f = cls.__new__(cls)
        f.calc, f.deg, f.c = calc, deg, coeffs
        return f

    def _check(self, other: "Form"):
        if other.calc is not self.calc:
            raise TypeError("forms from different calculus contexts")
        if other.deg != self.deg:
            raise ValueError(f"degree mismatch {self.deg} vs {other.deg}")

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        if not other.c:
            return self
        if not self.c:
            return other
        out = dict(self.c)
        for i, a in other.c.items():
            if i in out:
                s = out[i] + a
                if s.is_zero():
                    del out[i]
                else:
                    out[i] = s
            else:
                out[i] = a
        return Form._raw(self.calc, self.deg, out)

    def __neg__(self) -> "Form":
        return Form._raw(self.calc, self.deg, {i: -a for i, a in self.c.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def scale(self, s) -> "Form":
        s = self.calc.coerce_scalar(s)
        if s.is_zero():
            return Form._raw(self.calc, self.deg, {})
        return Form(self.calc, self.deg, {i: a.scale(s) for i, a in self.c.items()})

    def left(self, a) -> "Form":
        """a . self"""
        if a.is_zero():
            return Form._raw(self.calc, self.deg, {})
        return Form(self.calc, self.deg, {i: a * x for i, x in self.c.items()})

    def right(self, a) -> "Form":
        """self . a, moving a left through each basis element."""
        if a.is_zero():
            return Form._raw(self.calc, self.deg, {})
        tw = self.calc.twist
        n = self.deg
        return Form(self.calc, n, {i: x * tw(n, i, a) for i, x in self.c.items()})

    def wedge(self, other: "Form") -> "Form":
        if other.calc is not self.calc:
            raise TypeError("forms from different calculus contexts")
        calc = self.calc
        n, m = self.deg, other.deg
        k = n + m
        if not calc.has_degree(k) or not self.c or not other.c:
            return Form._raw(calc, k, {})
        out: dict = {}
        for i, a in self.c.items():
            for j, b in other.c.items():
                coeff = a * calc.twist(n, i, b)
                if coeff.is_zero():
                    continue
                for kk, s in calc.wedge_basis(n, i, m, j).items():
                    t = coeff.scale(s)
                    if kk in out:
                        out[kk] = out[kk] + t
                    else:
                        out[kk] = t
        return Form(calc, k, out)

    def d(self) -> "Form":
        calc = self.calc
        n = self.deg
        if not calc.has_degree(n + 1):
            return Form._raw(calc, n + 1, {})
        total = Form._raw(calc, n + 1, {})
        for i, a in self.c.items():
            da = calc.d_alg(a)
            if da.c:
                total = total + da.wedge(calc.basis_form(n, i))
            db = calc.d_basis(n, i)
            if db.c:
                total = total + db.left(a)
        return total

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.calc is other.calc and self.deg == other.deg and self.c == other.c

    def __hash__(self):
        return hash((self.deg, tuple(sorted(self.c))))

    def coeffs(self) -> Iterator[RatFunc]:
        for a in self.c.values():
            yield from self.calc.alg_coeffs(a)

    def substitute(self, values, target: Calculus) -> "Form":
        return Form(target, self.deg, {i: self.calc.substitute_alg(a, values, target) for i, a in self.c.items()})

    def render(self) -> str:
        if not self.c:
            return "0"
        parts = []
        for i in sorted(self.c):
            lab = self.calc.basis_label(self.deg, i)
            a = self.calc.render_alg(self.c[i])
            parts.append(a if self.deg == 0 else f"({a})*{lab}")
        return " + ".join(parts)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Form[{self.deg}]({self.render()})"


def wedge(x: Form, y: Form) -> Form:
    return x.wedge(y)
