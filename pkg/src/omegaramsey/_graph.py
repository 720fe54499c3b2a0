"""Shortest-path and accepting-cycle search on implicit labelled graphs.

``succ(node)`` yields ``(label, target, accepting)`` triples in a fixed
order; breadth-first search then returns, for every node, the shortest
path whose label sequence is least in that order.
"""

from collections import deque


def bfs_tree(starts, succ, limit=None):
    """Parent pointers ``node -> (parent, label)``; starts map to ``None``."""
    parent = {}
    queue = deque()
    for s in starts:
        if s not in parent:
            parent[s] = None
            queue.append(s)
    while queue:
        v = queue.popleft()
        for label, w, _acc in succ(v):
            if w not in parent:
                parent[w] = (v, label)
                if limit is not None and len(parent) > limit:
                    raise MemoryError(f"graph exceeds {limit} nodes")
                queue.append(w)
    return parent


def path_to(parent, v):
    labels, nodes = [], [v]
    while parent[v] is not None:
        v, label = parent[v]
        labels.append(label)
        nodes.append(v)
    labels.reverse()
    nodes.reverse()
    return labels, nodes


def sccs(nodes, succ):
    """Tarjan's algorithm, iterative; returns ``node -> component id``."""
    index, low, comp = {}, {}, {}
    stack, on_stack = [], set()
    counter = 0
    ncomp = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter([w for _l, w, _a in succ(root)]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter([x for _l, x, _a in succ(w)])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def accepting_lasso(starts, succ, key=tuple, limit=None, keep=None):
    """Find a reachable cycle through an accepting edge.

    Returns ``(stem_labels, cycle_labels)`` or ``None``. The cycle starts at
    the shallowest node (ties broken by ``key`` of the stem labels) of any
    strongly connected component holding an accepting edge, and is the
    shortest accepting cycle through that node. ``keep`` optionally
    restricts which nodes may lie on the cycle.
    """
    parent = bfs_tree(starts, succ, limit)
    nodes = list(parent)  # BFS order: non-decreasing depth
    comp = sccs(nodes, succ)
    good = set()
    for x in nodes:
        if keep is not None and not keep(x):
            continue
        for _label, y, acc in succ(x):
            if acc and comp[x] == comp[y] and (keep is None or keep(y)):
                good.add(comp[x])
    if not good:
        return None
    best = None
    for v in nodes:
        if comp[v] in good and (keep is None or keep(v)):
            stem, _ = path_to(parent, v)
            cand = (len(stem), key(stem))
            if best is not None and cand[0] > best[0][0]:
                break
            if best is None or cand < best[0]:
                best = (cand, v, stem)
    _, v, stem = best
    cycle = _accepting_cycle(v, succ, comp, keep)
    return stem, cycle


def _accepting_cycle(v, succ, comp, keep):
    c = comp[v]
    start = (v, False)
    parent = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        x, flag = node
        for label, y, acc in succ(x):
            if comp.get(y) != c or (keep is not None and not keep(y)):
                continue
            nxt = (y, flag or acc)
            if nxt in parent:
                continue
            parent[nxt] = (node, label)
            if nxt == (v, True):
                return path_to(parent, nxt)[0]
            queue.append(nxt)
    raise AssertionError("component marked accepting has no accepting cycle")


def accepting_node_lasso(starts, succ, is_acc, key=tuple):
    """Shortest ``path to f`` + ``shortest cycle f -> f`` over accepting nodes.

    Minimises ``(total length, key(labels))``; one BFS per accepting node,
    so meant for automata rather than large product graphs.
    """
    parent = bfs_tree(starts, succ)
    best = None
    for f in parent:
        if not is_acc(f):
            continue
        cyc = _shortest_cycle(f, succ)
        if cyc is None:
            continue
        stem, _ = path_to(parent, f)
        cand = (len(stem) + len(cyc), key(stem + cyc))
        if best is None or cand < best[0]:
            best = (cand, stem, cyc)
    return None if best is None else (best[1], best[2])


def _shortest_cycle(f, succ):
    parent = {}
    queue = deque()
    for label, w, _acc in succ(f):
        if w == f:
            return [label]
        if w not in parent:
            parent[w] = None
            queue.append((w, [label]))
    while queue:
        v, labels = queue.popleft()
        for label, w, _acc in succ(v):
            if w == f:
                return labels + [label]
            if w not in parent:
                parent[w] = None
                queue.append((w, labels + [label]))
    return None
