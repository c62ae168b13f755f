"""Pure numpy implementation of the rank-arithmetic kernels.

Every group element is identified by its rank in the sorted element table.
The images of the base points determine an element, so a product is found
by looking up ``key(a*b) = sum_k perms[b, bimg[a, k]] * pw[k]`` in the sorted
key array.  Signatures match the compiled module exactly.
"""

import numpy as np


def mul_pairs(perms, bimg, pw, skeys, sranks, a, b):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    a, b = np.broadcast_arrays(a, b)
    key = np.zeros(a.shape, dtype=np.uint64)
    for k in range(bimg.shape[1]):
        key += perms[b, bimg[a, k]].astype(np.uint64) * pw[k]
    return sranks[np.searchsorted(skeys, key)]


def closure(perms, bimg, pw, skeys, sranks, members, gens, bound):
    """Dimino closure of ``<members, gens>`` given that ``members`` is a subgroup.

    Returns the sorted member ranks, or ``None`` once more than ``bound``
    elements have been found.
    """
    members = np.asarray(members, dtype=np.int64)
    gens = np.asarray(gens, dtype=np.int64)
    mask = np.zeros(perms.shape[0], dtype=bool)
    mask[members] = True
    size = members.size
    if size > bound:
        return None
    parts = [members]
    frontier = np.zeros(1, dtype=np.int64)
    ng = gens.size
    while frontier.size and ng:
        t = mul_pairs(perms, bimg, pw, skeys, sranks,
                      np.repeat(frontier, ng), np.tile(gens, frontier.size))
        t = np.unique(t[~mask[t]])
        if not t.size:
            break
        cos = mul_pairs(perms, bimg, pw, skeys, sranks,
                        members[:, None], t[None, :])
        _, first = np.unique(cos.min(axis=0), return_index=True)
        new = cos[:, first]
        mask[new.ravel()] = True
        size += new.size
        if size > bound:
            return None
        parts.append(new.ravel())
        frontier = t[first]
    return np.sort(np.concatenate(parts)).astype(np.int32)
