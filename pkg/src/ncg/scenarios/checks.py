"""Small adapters turning engine results into (status, residual) pairs."""

from __future__ import annotations

from ..conncore.equations import EquationSet


def _render(x) -> str:
    r = getattr(x, "render", None)
    out = r() if callable(r) else str(x)
    return out if isinstance(out, str) else "; ".join(map(str, out))


def _is_zero(x) -> bool:
    z = getattr(x, "is_zero", None)
    if callable(z):
        return z()
    return not x


def zero(x):
    return ("pass", "0") if _is_zero(x) else ("fail", _render(x))


def all_zero(items):
    """Items are residual objects or (label, residual) pairs; reports the first nonzero one."""
    n = 0
    for it in items:
        label, r = it if isinstance(it, tuple) else (f"#{n}", it)
        n += 1
        if not _is_zero(r):
            return "fail", f"{label}: {_render(r)}"
    if n == 0:
        return "vacuous", "no residuals to check"
    return "pass", "0"


def nonzero(x, what: str = "residual"):
    """Negative control: passes when the quantity is nonzero."""
    if _is_zero(x):
        return "fail", f"{what} unexpectedly vanished"
    return "pass", f"nonzero as expected: {_render(x)}"


def any_nonzero(items, what: str = "residual"):
    for it in items:
        r = it[1] if isinstance(it, tuple) else it
        if not _is_zero(r):
            return "pass", f"nonzero as expected: {_render(r)}"
    return "fail", f"{what} unexpectedly vanished"


def equal(a, b):
    if a == b:
        return "pass", str(a)
    return "fail", f"got {a}, expected {b}"


def same_conditions(derived: EquationSet, expected: EquationSet):
    ok, how = derived.equivalent(expected)
    if ok:
        return "pass", how
    return "fail", f"{how}; derived: {derived.render()}; expected: {expected.render()}"


def vanishes(eqs: EquationSet, values, ring):
    ok, why = eqs.vanishes_on(values, ring)
    if ok:
        extra = f" (genericity: {', '.join(str(p) + ' != 0' for p in eqs.denominators)})" if eqs.denominators else ""
        return "pass", "0" + extra
    return "fail", why


def fails_on(eqs: EquationSet, values, ring):
    ok, why = eqs.vanishes_on(values, ring)
    return ("fail", "conditions unexpectedly hold") if ok else ("pass", f"violated as expected: {why}")


def compare(computed, printed, label: str = "printed"):
    """Exact comparison of a recomputed object with a transcribed expected one."""
    diff = computed - printed
    if diff.is_zero():
        return "pass", "0"
    return "fail", f"computed {_render(computed)} ; {label} {_render(printed)} ; difference {_render(diff)}"
