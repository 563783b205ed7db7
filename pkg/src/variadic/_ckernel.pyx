# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""C backend for variadic.kernel programs.

Arithmetic is done in signed 64 bits; any overflow raises OverflowError and
the caller replays the run with the Python backend.
"""

from libc.stdlib cimport malloc, free

from .errors import BudgetExceeded

cdef extern from *:
    bint __builtin_saddll_overflow(long long a, long long b, long long *res) nogil
    bint __builtin_smulll_overflow(long long a, long long b, long long *res) nogil

cdef enum:
    NUM = 0
    VAR = 1
    ADD = 2
    MUL = 3
    LEQ = 4
    DELTA = 5
    CALLF = 6
    VSUM = 7
    VANY = 8
    CALLV = 9
    ESUM = 10
    EANY = 11
    CALLE = 12
    CALLN = 13


cdef long long _natural(object f, object r) except -1:
    cdef long long v = r
    if v < 0:
        raise ValueError(f"interpretation {getattr(f, '__name__', f)!r} returned {r}, not a natural")
    return v


cdef class CProgram:
    cdef int[:] op, a, b, c, d, e, kids
    cdef long long[:] consts
    cdef list fns
    cdef int root

    def __init__(self, op, a, b, c, d, e, kids, consts, fns, int root):
        self.op = op
        self.a = a
        self.b = b
        self.c = c
        self.d = d
        self.e = e
        self.kids = kids
        self.consts = consts
        self.fns = list(fns)
        self.root = root

    def run(self, env, meter):
        cdef _Frame fr = _Frame(self, len(env))
        cdef Py_ssize_t i
        fr.steps = meter.steps
        fr.max_steps = meter.max_steps
        fr.max_width = meter.max_width
        try:
            for i in range(len(env)):
                fr.env[i] = env[i]
            return fr.ev(self.root)
        finally:
            meter.steps = fr.steps


cdef class _Frame:
    """State of one run; programs themselves stay immutable and shareable."""

    cdef CProgram p
    cdef long long *env
    cdef long long steps, max_steps, max_width

    def __cinit__(self, CProgram p, Py_ssize_t nslots):
        self.p = p
        self.env = <long long *> malloc((nslots + 1) * sizeof(long long))
        if self.env == NULL:
            raise MemoryError()

    def __dealloc__(self):
        free(self.env)

    cdef inline long long width(self, int i) except -1:
        cdef long long w = self.ev(self.p.d[i])
        if w >= self.max_width:
            raise BudgetExceeded("width", self.max_width, w + 1)
        return w

    cdef tuple kid_values(self, int ptr):
        cdef int n = self.p.kids[ptr]
        cdef int j
        return tuple([self.ev(self.p.kids[ptr + 1 + j]) for j in range(n)])

    cdef long long ev(self, int i) except -1:
        cdef CProgram p = self.p
        cdef long long x, y, r, w, k, saved
        cdef int o, slot, body, n, j, ptr
        cdef list vals
        self.steps += 1
        if self.steps > self.max_steps:
            raise BudgetExceeded("steps", self.max_steps)
        o = p.op[i]
        if o == VAR:
            return self.env[p.a[i]]
        if o == NUM:
            return p.consts[p.a[i]]
        if o == ADD:
            x = self.ev(p.a[i])
            y = self.ev(p.b[i])
            if __builtin_saddll_overflow(x, y, &r):
                raise OverflowError()
            return r
        if o == MUL:
            x = self.ev(p.a[i])
            y = self.ev(p.b[i])
            if __builtin_smulll_overflow(x, y, &r):
                raise OverflowError()
            return r
        if o == LEQ:
            x = self.ev(p.a[i])
            y = self.ev(p.b[i])
            return 1 if x <= y else 0
        if o == DELTA:
            x = self.ev(p.a[i])
            y = self.ev(p.b[i])
            return 1 if x == y else 0
        if o == ESUM or o == EANY:
            w = self.width(i)
            slot = p.c[i]
            body = p.b[i]
            saved = self.env[slot]
            r = 0
            for k in range(w + 1):
                self.env[slot] = k
                x = self.ev(body)
                if o == ESUM:
                    if __builtin_saddll_overflow(r, x, &r):
                        raise OverflowError()
                elif x != 0:
                    r = 1
            self.env[slot] = saved
            return r
        if o == CALLE or o == CALLN:
            pre = self.kid_values(p.e[i]) if o == CALLN else None
            w = self.width(i)
            slot = p.c[i]
            body = p.b[i]
            saved = self.env[slot]
            vals = []
            for k in range(w + 1):
                self.env[slot] = k
                vals.append(self.ev(body))
            self.env[slot] = saved
            f = p.fns[p.a[i]]
            if o == CALLE:
                return _natural(f, f(tuple(vals)))
            return _natural(f, f(pre, tuple(vals)))
        if o == VSUM or o == VANY:
            ptr = p.b[i]
            n = p.kids[ptr]
            r = 0
            for j in range(n):
                x = self.ev(p.kids[ptr + 1 + j])
                if o == VSUM:
                    if __builtin_saddll_overflow(r, x, &r):
                        raise OverflowError()
                elif x != 0:
                    r = 1
            return r
        if o == CALLF:
            f = p.fns[p.a[i]]
            return _natural(f, f(*self.kid_values(p.b[i])))
        if o == CALLV:
            f = p.fns[p.a[i]]
            return _natural(f, f(self.kid_values(p.b[i])))
        raise ValueError(f"bad opcode {o}")
