OP_ATOM = 0
OP_NEG = 1
OP_AND = 2
OP_OR = 3
OP_IMP = 4
OP_IFF = 5
OP_XOR = 6
