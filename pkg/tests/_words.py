"""Random words and single relation rewrites shared by the braid tests."""

import random

from tilting_atlas.braid import group, invert_word


def random_word(rng, n, max_len=12):
    return [(rng.randint(1, n), rng.choice((1, -1))) for _ in range(rng.randint(0, max_len))]


def rewrite_once(G, word, rng):
    """Insert or apply one defining relation somewhere in the word."""
    n = G.diagram.rank
    adj = G.diagram.adjacency
    i = rng.randint(1, n)
    j = rng.choice([k for k in range(1, n + 1) if k != i] or [i])
    if j == i:
        lhs, rhs = [(i, 1)], [(i, 1)]
    elif adj[i - 1][j - 1]:
        lhs, rhs = [(i, 1), (j, 1), (i, 1)], [(j, 1), (i, 1), (j, 1)]
    else:
        lhs, rhs = [(i, 1), (j, 1)], [(j, 1), (i, 1)]
    # look for an occurrence first, otherwise splice lhs * rhs^-1 in
    for p in range(len(word) - len(lhs) + 1):
        if word[p : p + len(lhs)] == lhs:
            return word[:p] + rhs + word[p + len(lhs) :]
    p = rng.randint(0, len(word))
    return word[:p] + lhs + invert_word(rhs) + word[p:]


__all__ = ["random_word", "rewrite_once", "group", "random"]
