"""Array-level machinery shared by flag graphs and permutation groups.

A *colored permutation graph* is a list of image arrays over ``range(n)``;
edge ``p -> perms[c][p]`` has color ``c``.  Flag graphs (one involution per
color) and Schreier graphs of groups (one permutation per generator letter)
are both handled here.
"""

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

INDEX = np.int64


def as_perm_array(images):
    return np.asarray(images, dtype=INDEX)


def is_permutation(arr):
    n = arr.shape[0]
    if n == 0:
        return True
    if arr.min() < 0 or arr.max() >= n:
        return False
    return np.bincount(arr, minlength=n).max() == 1


def inverse_perm(arr):
    inv = np.empty_like(arr)
    inv[arr] = np.arange(arr.shape[0], dtype=arr.dtype)
    return inv


def components(perms, n):
    """Connected components under the given image arrays.

    Labels are renumbered by first appearance, so component 0 contains point 0
    and the numbering only depends on the graph.
    """
    perms = [np.asarray(p) for p in perms]
    if n == 0:
        return 0, np.zeros(0, dtype=INDEX)
    if not perms:
        return n, np.arange(n, dtype=INDEX)
    rows = np.concatenate([np.arange(n, dtype=INDEX)] * len(perms))
    cols = np.concatenate(perms)
    g = coo_matrix((np.ones(rows.shape[0], dtype=np.int8), (rows, cols)), shape=(n, n))
    k, labels = connected_components(g, directed=True, connection="weak")
    _, first, inv = np.unique(labels, return_index=True, return_inverse=True)
    order = np.argsort(first, kind="stable")
    remap = np.empty_like(order)
    remap[order] = np.arange(order.shape[0])
    return int(k), remap[inv].astype(INDEX)


def component_sizes(labels):
    return np.bincount(labels)


def cycles_of(arr):
    """Cycle labels of a single permutation (same numbering rule as ``components``)."""
    return components([arr], arr.shape[0])


def bfs_levels(perms, root):
    """Breadth-first tree from ``root``.

    Returns a list of levels; each level is a list of ``(nodes, parents, color)``
    triples with ``nodes = perms[color][parents]``.  Within a level colors are
    scanned in order and the first discovery of a node wins.
    """
    n = perms[0].shape[0] if len(perms) else 1
    seen = np.zeros(n, dtype=bool)
    seen[root] = True
    frontier = np.array([root], dtype=INDEX)
    levels = []
    while frontier.size:
        level = []
        nxt = []
        for c, p in enumerate(perms):
            img = p[frontier]
            fresh = ~seen[img]
            if not fresh.any():
                continue
            img, par = img[fresh], frontier[fresh]
            img, first = np.unique(img, return_index=True)
            par = par[first]
            seen[img] = True
            level.append((img, par, c))
            nxt.append(img)
        if not level:
            break
        levels.append(level)
        frontier = np.concatenate(nxt)
    return levels


def reached(levels, root):
    parts = [np.array([root], dtype=INDEX)]
    for level in levels:
        parts.extend(nodes for nodes, _, _ in level)
    return np.concatenate(parts)


def extend_map(src_perms, dst_perms, levels, root, image, check=True):
    """Extend ``root -> image`` to a color-preserving map along a BFS tree.

    ``levels`` must come from ``bfs_levels(src_perms, root)``.  Returns
    ``(img, bad)`` where ``img`` holds the image of every reached source point
    (``-1`` elsewhere) and ``bad`` is ``None`` when every source edge out of a
    reached point is respected, otherwise a ``(point, color)`` witness.
    """
    n = src_perms[0].shape[0]
    img = np.full(n, -1, dtype=INDEX)
    img[root] = image
    for level in levels:
        for nodes, parents, c in level:
            img[nodes] = dst_perms[c][img[parents]]
    if not check:
        return img, None
    dom = img >= 0
    pts = np.nonzero(dom)[0]
    for c, (sp, dp) in enumerate(zip(src_perms, dst_perms)):
        lhs = img[sp[pts]]
        rhs = dp[img[pts]]
        bad = np.nonzero(lhs != rhs)[0]
        if bad.size:
            return img, (int(pts[bad[0]]), c)
    return img, None


def word_action(perms, letters, n=None):
    """Image array of applying ``letters`` left to right (right action)."""
    if n is None:
        n = perms[0].shape[0]
    arr = np.arange(n, dtype=INDEX)
    for x in letters:
        arr = perms[x][arr]
    return arr
