"""Pure-Python prefix-replacement kernels.

Tables are sequences of ``(domain, codomain)`` word pairs; words are
strings over ``"01"``.  The compiled twin in ``_vkernel.pyx`` exposes the
same functions with identical results.
"""


def reduce_pairs(pairs):
    """Merge sibling carets to a fixpoint and return the table sorted by domain.

    Sorting a prefix-free set lexicographically puts ``m0`` right before
    ``m1``, so one stack pass reaches the fixpoint.
    """
    stack = []
    for d, c in sorted(pairs):
        while True:
            if stack and d and d[-1] == "1" and c and c[-1] == "1":
                pd, pc = stack[-1]
                if (
                    len(pd) == len(d)
                    and pd[-1] == "0"
                    and pd[:-1] == d[:-1]
                    and len(pc) == len(c)
                    and pc[-1] == "0"
                    and pc[:-1] == c[:-1]
                ):
                    stack.pop()
                    d, c = d[:-1], c[:-1]
                    continue
            break
        stack.append((d, c))
    return tuple(stack)


def compose_pairs(outer, inner):
    """Unreduced table of ``outer o inner`` (inner applied first)."""
    out = []
    for d_in, c_in in inner:
        for d_out, c_out in outer:
            if c_in.startswith(d_out):
                out.append((d_in, c_out + c_in[len(d_out):]))
                # d_out is the unique domain cell above c_in
                break
            if d_out.startswith(c_in):
                out.append((d_in + d_out[len(c_in):], c_out))
    return out


def compose_reduce(outer, inner):
    return reduce_pairs(compose_pairs(outer, inner))
