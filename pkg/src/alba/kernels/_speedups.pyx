# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of the pure kernels: same opcodes, same results."""

from libc.stdlib cimport free, malloc

BACKEND = "compiled"


cdef long long _mask_of(long long[:] ops, long long[:] args, long long[:] lits,
                        int n, long long[:] rows, long long[:] preds,
                        long long* stack):
    cdef Py_ssize_t k, m = ops.shape[0]
    cdef int sp = 0, w
    cdef long long op, s, r
    cdef long long full = ((<long long>1) << n) - 1
    for k in range(m):
        op = ops[k]
        if op == 0:
            stack[sp] = lits[<Py_ssize_t>args[k]]
            sp += 1
        elif op == 1:
            sp -= 1
            stack[sp - 1] = stack[sp - 1] & stack[sp]
        elif op == 2:
            sp -= 1
            stack[sp - 1] = stack[sp - 1] | stack[sp]
        elif op == 3:
            sp -= 1
            stack[sp - 1] = (full & ~stack[sp - 1]) | stack[sp]
        elif op == 4:
            s = stack[sp - 1]
            r = 0
            for w in range(n):
                if (rows[w] & ~s) == 0:
                    r |= (<long long>1) << w
            stack[sp - 1] = r
        elif op == 5:
            s = stack[sp - 1]
            r = 0
            for w in range(n):
                if (preds[w] & s) != 0:
                    r |= (<long long>1) << w
            stack[sp - 1] = r
        elif op == 6:
            stack[sp] = full
            sp += 1
        else:
            stack[sp] = 0
            sp += 1
    return stack[sp - 1]


def modal_mask(ops, args, lits, n, rows, preds):
    """Evaluate one postfix modal program to the bitmask of worlds where
    it holds, reading symbol masks from `lits`."""
    cdef long long[:] o = ops
    cdef long long[:] a = args
    cdef long long[:] l = lits
    cdef long long[:] r = rows
    cdef long long[:] p = preds
    cdef int nn = n
    cdef Py_ssize_t m = o.shape[0]
    if m == 0:
        m = 1
    cdef long long* stack = <long long*> malloc(m * sizeof(long long))
    if stack == NULL:
        raise MemoryError()
    try:
        return _mask_of(o, a, l, nn, r, p, stack)
    finally:
        free(stack)


def ineq_valid_all(lops, largs, rops, rargs, lits, var_slots, n, rows, preds):
    """True when lhs <= rhs holds at every world under every assignment
    of world sets to the listed variable slots.  Mutates `lits`."""
    cdef long long[:] lo = lops
    cdef long long[:] la = largs
    cdef long long[:] ro = rops
    cdef long long[:] ra = rargs
    cdef long long[:] li = lits
    cdef long long[:] vs = var_slots
    cdef long long[:] r = rows
    cdef long long[:] p = preds
    cdef int nn = n
    cdef int k = <int> vs.shape[0]
    cdef long long full = ((<long long>1) << nn) - 1
    cdef long long total = (<long long>1) << (nn * k)
    cdef Py_ssize_t m = lo.shape[0]
    if ro.shape[0] > m:
        m = ro.shape[0]
    if m == 0:
        m = 1
    cdef long long* stack = <long long*> malloc(m * sizeof(long long))
    if stack == NULL:
        raise MemoryError()
    cdef long long combo, c, lm, rm
    cdef int j
    cdef bint ok = True
    try:
        for combo in range(total):
            c = combo
            for j in range(k):
                li[<Py_ssize_t>vs[j]] = c & full
                c >>= nn
            lm = _mask_of(lo, la, li, nn, r, p, stack)
            if lm == 0:
                continue
            rm = _mask_of(ro, ra, li, nn, r, p, stack)
            if (lm & ~rm) != 0:
                ok = False
                break
    finally:
        free(stack)
    return bool(ok)


cdef bint _fo_rec(long long[:] ops, long long[:] aas, long long[:] bs,
                  Py_ssize_t idx, int n, long long[:] rows, long long* asg):
    cdef long long op = ops[idx]
    cdef Py_ssize_t a = <Py_ssize_t> aas[idx]
    cdef Py_ssize_t b = <Py_ssize_t> bs[idx]
    cdef int w
    if op == 0:
        return True
    if op == 1:
        return False
    if op == 2:
        return ((rows[<Py_ssize_t>asg[a]] >> asg[b]) & 1) != 0
    if op == 3:
        return asg[a] == asg[b]
    if op == 4:
        return asg[a] != asg[b]
    if op == 5:
        return not _fo_rec(ops, aas, bs, a, n, rows, asg)
    if op == 6:
        return _fo_rec(ops, aas, bs, a, n, rows, asg) and _fo_rec(ops, aas, bs, b, n, rows, asg)
    if op == 7:
        return _fo_rec(ops, aas, bs, a, n, rows, asg) or _fo_rec(ops, aas, bs, b, n, rows, asg)
    if op == 8:
        return (not _fo_rec(ops, aas, bs, a, n, rows, asg)) or _fo_rec(ops, aas, bs, b, n, rows, asg)
    if op == 9:
        for w in range(n):
            asg[a] = w
            if not _fo_rec(ops, aas, bs, b, n, rows, asg):
                return False
        return True
    for w in range(n):
        asg[a] = w
        if _fo_rec(ops, aas, bs, b, n, rows, asg):
            return True
    return False


def fo_eval(ops, aas, bs, root, n, rows, nslots):
    """Evaluate a closed first-order program over the frame with rows."""
    cdef long long[:] o = ops
    cdef long long[:] av = aas
    cdef long long[:] bv = bs
    cdef long long[:] r = rows
    cdef long long asg[64]
    cdef int j
    if nslots > 64:
        raise ValueError("too many quantifier slots")
    for j in range(64):
        asg[j] = 0
    return bool(_fo_rec(o, av, bv, root, n, r, asg))
