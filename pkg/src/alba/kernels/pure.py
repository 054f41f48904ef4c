"""Pure-Python kernels: the reference implementation the extension mirrors.

World sets are bitmasks over n worlds; rows[w] holds the successor mask
of world w and preds[w] the predecessor mask.  All three entry points
take flat integer arrays so the compiled backend can run the very same
programs.
"""
from __future__ import annotations

BACKEND = "pure"


def modal_mask(ops, args, lits, n, rows, preds):
    """Evaluate one postfix modal program to the bitmask of worlds where
    it holds, reading symbol masks from `lits`."""
    full = (1 << n) - 1
    stack = []
    for k in range(len(ops)):
        op = ops[k]
        if op == 0:
            stack.append(lits[args[k]])
        elif op == 1:
            b = stack.pop()
            stack[-1] &= b
        elif op == 2:
            b = stack.pop()
            stack[-1] |= b
        elif op == 3:
            b = stack.pop()
            stack[-1] = (full & ~stack[-1]) | b
        elif op == 4:
            s = stack[-1]
            r = 0
            for w in range(n):
                if rows[w] & ~s == 0:
                    r |= 1 << w
            stack[-1] = r
        elif op == 5:
            s = stack[-1]
            r = 0
            for w in range(n):
                if preds[w] & s:
                    r |= 1 << w
            stack[-1] = r
        elif op == 6:
            stack.append(full)
        else:
            stack.append(0)
    return stack[-1]


def ineq_valid_all(lops, largs, rops, rargs, lits, var_slots, n, rows, preds):
    """True when lhs <= rhs holds at every world under every assignment
    of world sets to the listed variable slots.  Mutates `lits`."""
    k = len(var_slots)
    full = (1 << n) - 1
    total = 1 << (n * k)
    for combo in range(total):
        c = combo
        for j in range(k):
            lits[var_slots[j]] = c & full
            c >>= n
        lm = modal_mask(lops, largs, lits, n, rows, preds)
        if lm == 0:
            continue
        rm = modal_mask(rops, rargs, lits, n, rows, preds)
        if lm & ~rm:
            return False
    return True


def fo_eval(ops, aas, bs, root, n, rows, nslots):
    """Evaluate a closed first-order program over the frame with rows."""
    asg = [0] * nslots

    def rec(idx):
        op = ops[idx]
        if op == 0:
            return True
        if op == 1:
            return False
        if op == 2:
            return (rows[asg[aas[idx]]] >> asg[bs[idx]]) & 1 != 0
        if op == 3:
            return asg[aas[idx]] == asg[bs[idx]]
        if op == 4:
            return asg[aas[idx]] != asg[bs[idx]]
        if op == 5:
            return not rec(aas[idx])
        if op == 6:
            return rec(aas[idx]) and rec(bs[idx])
        if op == 7:
            return rec(aas[idx]) or rec(bs[idx])
        if op == 8:
            return (not rec(aas[idx])) or rec(bs[idx])
        slot = aas[idx]
        child = bs[idx]
        if op == 9:
            for w in range(n):
                asg[slot] = w
                if not rec(child):
                    return False
            return True
        for w in range(n):
            asg[slot] = w
            if rec(child):
                return True
        return False

    return rec(root)
