"""Cohomology of a flat connection and the cup product built from the braiding."""

from __future__ import annotations

from dataclasses import dataclass

from ..exactalg import ExactMatrix, RatFunc, kernel, rank
from .connections import LeftConnection, sigma_push, tensor_connection
from .modules import TensorForm, TensorModule


def _check_finite(calc):
    if not calc.finite_dimensional:
        raise ValueError("cohomology needs a finite-dimensional coefficient algebra")


def _coords(calc):
    """Scalar coordinates of algebra elements (values on group elements)."""
    return len(calc.one().v)


def _vector_basis(conn: LeftConnection, n: int) -> list[TensorForm]:
    calc = conn.calc
    m = conn.module
    out = []
    for k in range(m.ngens()):
        for I in range(calc.dim(n)):
            for x in range(_coords(calc)):
                out.append(TensorForm(m, n, {k: calc.basis_form(n, I, calc.delta(x))}, canonical=False))
    return out


def _vector(x: TensorForm, conn: LeftConnection) -> list:
    calc = conn.calc
    m = conn.module
    ng = _coords(calc)
    dim = calc.dim(x.deg)
    zero = RatFunc.const(calc.ring, 0)
    vec = [zero] * (m.ngens() * dim * ng)
    for k, w in x.comps.items():
        for I, a in w.c.items():
            for g, c in enumerate(a.v):
                vec[(k * dim + I) * ng + g] = c
    return vec


def covariant_matrix(conn: LeftConnection, n: int) -> ExactMatrix:
    """nabla^[n] : Omega^n (x) E -> Omega^{n+1} (x) E in delta-function coordinates (columns = sources)."""
    calc = conn.calc
    _check_finite(calc)
    rows_n = conn.module.ngens() * calc.dim(n + 1) * _coords(calc)
    cols = [_vector(conn.apply_n(b), conn) for b in _vector_basis(conn, n)]
    if not cols or not rows_n:
        return ExactMatrix.zeros(calc.ring, rows_n, len(cols))
    return ExactMatrix(calc.ring, [list(r) for r in zip(*cols)])


@dataclass
class FlatCohomology:
    dims: tuple
    chain_dims: tuple
    ranks: tuple


def flat_cohomology(conn: LeftConnection, check_flat: bool = True) -> FlatCohomology:
    """dim H^n = dim ker nabla^[n] - rank nabla^[n-1], for every degree of the calculus.

    Ranks are generic ranks over the parameter field when the connection is symbolic.
    """
    calc = conn.calc
    _check_finite(calc)
    if check_flat and not conn.curvature().is_zero():
        raise ValueError("connection is not flat")
    top = calc.top_degree
    ng = _coords(calc)
    chain = tuple(conn.module.ngens() * calc.dim(n) * ng for n in range(top + 1))
    ranks = []
    for n in range(top + 1):
        if n == top:
            ranks.append(0)
            continue
        ranks.append(rank(covariant_matrix(conn, n)))
    dims = tuple(chain[n] - ranks[n] - (ranks[n - 1] if n else 0) for n in range(top + 1))
    return FlatCohomology(dims, chain, tuple(ranks))


def cocycles(conn: LeftConnection, n: int) -> list[TensorForm]:
    """A basis of ker nabla^[n] as tensor forms."""
    calc = conn.calc
    basis = _vector_basis(conn, n)
    if n >= calc.top_degree:
        return [TensorForm(b.module, n, b.comps) for b in basis]
    ker = kernel(covariant_matrix(conn, n))
    out = []
    for v in ker:
        acc = conn.module.zero(n)
        for c, b in zip(v, basis):
            if c:
                acc = acc + b.scale(c)
        out.append(TensorForm(acc.module, n, acc.comps))
    return out


def cup(x: TensorForm, y: TensorForm, sigma, target: TensorModule | None = None) -> TensorForm:
    """(id ^ sigma_E (x) id)(x (x) y) in Omega^{m+n} (x) E (x) F."""
    E, F = x.module, y.module
    target = TensorModule([E, F]) if target is None else target
    out = target.zero(x.deg + y.deg)
    for i, w in x.comps.items():
        out = out + sigma_push(sigma, i, y, target).wedge_left(w)
    return TensorForm(target, out.deg, out.comps)


def cup_chain_residual(x: TensorForm, y: TensorForm, conn_e: LeftConnection, conn_f: LeftConnection) -> TensorForm:
    """nabla_{E(x)F}(x cup y) - (nabla_E x) cup y - (-1)^m x cup (nabla_F y)."""
    if conn_e.sigma is None:
        raise ValueError("left factor needs a braiding")
    tc = tensor_connection(conn_e, conn_f)
    T = tc.module
    s = conn_e.sigma
    lhs = tc.apply_n(cup(x, y, s, T))
    a = cup(conn_e.apply_n(x), y, s, T)
    b = cup(x, conn_f.apply_n(y), s, T)
    return lhs - a - (b if x.deg % 2 == 0 else -b)
