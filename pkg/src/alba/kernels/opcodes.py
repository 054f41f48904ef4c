"""Opcode numbering shared by the compiled and pure kernels.

Modal formulas compile to postfix programs over world-set bitmasks;
first-order sentences compile to flat trees with child indices.  Both
backends interpret exactly these codes, so compiled programs are
portable between them.
"""

# Modal postfix programs: PUSH reads a slot of the literal table.
M_PUSH = 0
M_AND = 1
M_OR = 2
M_IMP = 3
M_BOX = 4
M_BDIAM = 5
M_TOP = 6
M_BOT = 7

# First-order tree nodes: `a` and `b` are child indices, except that
# REL/EQ/NEQ read assignment slots and FORALL/EXISTS use `a` as the slot
# their variable ranges over.
F_TRUE = 0
F_FALSE = 1
F_REL = 2
F_EQ = 3
F_NEQ = 4
F_NOT = 5
F_AND = 6
F_OR = 7
F_IMP = 8
F_FORALL = 9
F_EXISTS = 10
