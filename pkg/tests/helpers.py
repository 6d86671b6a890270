"""Diagram builders shared by the tests; independent of the tangle compiler."""

from tanglesurg.diagram import PDCode


def braid_closure(word, strands):
    """PD code of the closure of a braid word (generators +-i act on positions i-1, i).

    Strands run upwards.  For sigma_i the over-strand goes from bottom-left
    to top-right (a positive crossing); for sigma_i^-1 it goes from
    bottom-right to top-left.  Strands never touched become free loops.
    """
    next_id = 0
    start, cur = [], []
    for _ in range(strands):
        start.append(next_id)
        cur.append(next_id)
        next_id += 1
    crossings = []
    for g in word:
        i = abs(g)
        left, right = cur[i - 1], cur[i]
        new_left, new_right = next_id, next_id + 1
        next_id += 2
        if g > 0:
            crossings.append([right, new_right, new_left, left])
        else:
            crossings.append([left, right, new_right, new_left])
        cur[i - 1], cur[i] = new_left, new_right
    free = 0
    rename = {}
    for j in range(strands):
        if cur[j] == start[j]:
            free += 1
        else:
            rename[cur[j]] = start[j]
    crossings = [tuple(rename.get(a, a) for a in x) for x in crossings]
    return PDCode(crossings, None, free)


# positive kink: over-strand enters at slot 3
POSITIVE_KINK = PDCode([(0, 0, 1, 1)])
NEGATIVE_KINK = PDCode([(0, 1, 1, 0)])
POSITIVE_HOPF = PDCode([(0, 2, 1, 3), (2, 0, 3, 1)])

# two circles, one lying across the other: Reidemeister II on the unlink
R2_UNLINK = braid_closure([1, -1], 2)
