"""Pure-Python backend for :mod:`variadic.kernel` programs."""

from .errors import BudgetExceeded

NUM, VAR, ADD, MUL, LEQ, DELTA = 0, 1, 2, 3, 4, 5
CALLF, VSUM, VANY, CALLV = 6, 7, 8, 9
ESUM, EANY, CALLE, CALLN = 10, 11, 12, 13


def _checked(f, *args):
    r = f(*args)
    if r < 0:
        raise ValueError(f"interpretation {getattr(f, '__name__', f)!r} returned {r}, not a natural")
    return r


def run(prog, env, meter):
    op, a, b, c, d, e = prog.op, prog.a, prog.b, prog.c, prog.d, prog.e
    kids, consts, fns = prog.kids, prog.consts, prog.fns
    env = list(env)
    max_steps, max_width = meter.max_steps, meter.max_width
    steps = meter.steps

    def kid_values(ptr):
        n = kids[ptr]
        return [ev(kids[ptr + 1 + j]) for j in range(n)]

    def width(i):
        w = ev(d[i])
        if w + 1 > max_width:
            raise BudgetExceeded("width", max_width, w + 1)
        return w

    def ev(i):
        nonlocal steps
        steps += 1
        if steps > max_steps:
            raise BudgetExceeded("steps", max_steps)
        o = op[i]
        if o == VAR:
            return env[a[i]]
        if o == NUM:
            return consts[a[i]]
        if o == ADD:
            return ev(a[i]) + ev(b[i])
        if o == MUL:
            return ev(a[i]) * ev(b[i])
        if o == LEQ:
            return 1 if ev(a[i]) <= ev(b[i]) else 0
        if o == DELTA:
            return 1 if ev(a[i]) == ev(b[i]) else 0
        if o == ESUM or o == EANY or o == CALLE:
            w = width(i)
            slot, body = c[i], b[i]
            saved = env[slot]
            vals = []
            for k in range(w + 1):
                env[slot] = k
                vals.append(ev(body))
            env[slot] = saved
            if o == ESUM:
                return sum(vals)
            if o == EANY:
                return 1 if any(vals) else 0
            return _checked(fns[a[i]], tuple(vals))
        if o == CALLN:
            pre = tuple(kid_values(e[i]))
            w = width(i)
            slot, body = c[i], b[i]
            saved = env[slot]
            vals = []
            for k in range(w + 1):
                env[slot] = k
                vals.append(ev(body))
            env[slot] = saved
            return _checked(fns[a[i]], pre, tuple(vals))
        if o == VSUM:
            return sum(kid_values(b[i]))
        if o == VANY:
            return 1 if any(kid_values(b[i])) else 0
        if o == CALLF:
            return _checked(fns[a[i]], *kid_values(b[i]))
        if o == CALLV:
            return _checked(fns[a[i]], tuple(kid_values(b[i])))
        raise ValueError(f"bad opcode {o}")

    try:
        return ev(prog.root)
    finally:
        meter.steps = steps
