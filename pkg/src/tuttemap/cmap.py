"""Combinatorial maps: rotation systems over a set of half-edges.

A map is a permutation sigma (the counterclockwise order of half-edges
around each vertex) together with a fixed-point-free pairing alpha whose
orbits are the edges, acting transitively. Internally half-edges are
normalized to 0..2m-1 with partner(2i) = 2i+1, so the pairing is the xor
with 1 and permutations are flat tuples; user-facing names are carried
alongside for parsing and display.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Mapping, Sequence

from .graph import Multigraph

__all__ = [
    "MapError",
    "CombinatorialMap",
    "embed",
    "all_rotation_systems",
]

_FORBIDDEN_NAME_CHARS = set("()#;,")


class MapError(ValueError):
    """Malformed map input, or an operation the map structure rules out."""


def _perm_cycles(perm: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        h = start
        while not seen[h]:
            seen[h] = True
            cyc.append(h)
            h = perm[h]
        out.append(cyc)
    return out


class CombinatorialMap:
    """An embedded connected multigraph, optionally rooted at a half-edge.

    Instances are immutable. Edge deletion and contraction return new maps;
    the empty map (no half-edges) exists only as the terminal value those
    operations can produce, and ``validate`` rejects it.
    """

    __slots__ = ("_sigma", "_names", "_root", "_index", "_inverse",
                 "_edge_ids", "_underlying", "_he_vertex")

    def __init__(self, sigma: Sequence[int], names: Sequence[str],
                 root: int | None = None) -> None:
        sigma = tuple(sigma)
        names = tuple(names)
        n = len(sigma)
        if n % 2:
            raise MapError("a map needs an even number of half-edges")
        if len(names) != n:
            raise MapError(f"{n} half-edges but {len(names)} names")
        if sorted(sigma) != list(range(n)):
            raise MapError("sigma is not a permutation of the half-edges")
        index = {}
        for i, nm in enumerate(names):
            if not nm or any(ch.isspace() or ch in _FORBIDDEN_NAME_CHARS for ch in nm):
                raise MapError(f"half-edge name {nm!r} contains reserved characters")
            if nm in index:
                raise MapError(f"duplicate half-edge name {nm!r}")
            index[nm] = i
        if root is not None and not 0 <= root < n:
            raise MapError(f"root {root} is outside the half-edge range")
        edge_ids = []
        for k in range(n // 2):
            a, b = names[2 * k], names[2 * k + 1]
            edge_ids.append(a + b if a < b else b + a)
        if len(set(edge_ids)) != len(edge_ids):
            dup = next(e for e in edge_ids if edge_ids.count(e) > 1)
            raise MapError(
                f"two edges would print as {dup!r}; rename the half-edges"
            )
        self._sigma = sigma
        self._names = names
        self._root = root
        self._index = index
        self._inverse = None
        self._edge_ids = tuple(edge_ids)
        self._underlying = None
        self._he_vertex = None

    @classmethod
    def empty(cls) -> "CombinatorialMap":
        """The single-vertex, zero-edge terminal value."""
        return cls((), (), None)

    @property
    def is_empty(self) -> bool:
        return not self._sigma

    # -- basic access ---------------------------------------------------

    @property
    def n_half_edges(self) -> int:
        return len(self._sigma)

    @property
    def edge_count(self) -> int:
        return len(self._sigma) // 2

    @property
    def names(self) -> tuple[str, ...]:
        return self._names

    @property
    def edge_ids(self) -> tuple[str, ...]:
        """Printed edge ids, indexed by edge number; the id of edge k joins
        the names of half-edges 2k and 2k+1, smaller name first."""
        return self._edge_ids

    @property
    def root(self) -> int | None:
        return self._root

    @property
    def root_name(self) -> str | None:
        return None if self._root is None else self._names[self._root]

    def name(self, h: int) -> str:
        return self._names[h]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise MapError(f"unknown half-edge {name!r}") from None

    def sigma(self, h: int) -> int:
        return self._sigma[h]

    def alpha(self, h: int) -> int:
        return h ^ 1

    def sigma_inverse(self, h: int) -> int:
        if self._inverse is None:
            inv = [0] * len(self._sigma)
            for i, img in enumerate(self._sigma):
                inv[img] = i
            self._inverse = tuple(inv)
        return self._inverse[h]

    def edge_of(self, h: int) -> int:
        """Edge number of a half-edge."""
        return h >> 1

    def edge_index(self, token: str) -> int:
        """Resolve an edge id, or the name of either of its half-edges."""
        for k, eid in enumerate(self._edge_ids):
            if eid == token:
                return k
        if token in self._index:
            return self._index[token] >> 1
        raise MapError(f"unknown edge {token!r}")

    def with_root(self, root) -> "CombinatorialMap":
        """Same map rooted at the given half-edge (index, name, or None)."""
        if root is not None and not isinstance(root, int):
            root = self.index(root)
        return CombinatorialMap(self._sigma, self._names, root)

    # -- validation -------------------------------------------------------

    def validate(self) -> None:
        """Raise MapError naming the first violated structural rule.

        The constructor already enforces that sigma is a permutation and
        that the pairing is a fixed-point-free involution (it is built in);
        this adds non-emptiness and transitivity.
        """
        if self.is_empty:
            raise MapError(
                "map has no half-edges (the empty map is only a recursion terminal)"
            )
        n = len(self._sigma)
        seen = [False] * n
        start = 0 if self._root is None else self._root
        stack = [start]
        seen[start] = True
        count = 1
        while stack:
            h = stack.pop()
            for nxt in (self._sigma[h], h ^ 1):
                if not seen[nxt]:
                    seen[nxt] = True
                    count += 1
                    stack.append(nxt)
        if count != n:
            raise MapError(
                "sigma and alpha do not act transitively on the half-edges "
                f"(reached {count} of {n})"
            )

    # -- construction from named permutations ------------------------------

    @classmethod
    def from_permutations(cls, sigma: Mapping[str, str], alpha: Mapping[str, str],
                          root: str | None = None) -> "CombinatorialMap":
        """Build and validate a map from name-level permutations.

        ``alpha`` must be a fixed-point-free involution covering every
        half-edge; names missing from ``sigma`` are taken as fixed points.
        """
        domain = set(alpha)
        if not domain:
            raise MapError("map has no half-edges")
        for h, h2 in alpha.items():
            if h2 == h:
                raise MapError(f"alpha fixes {h!r}; every half-edge needs a distinct partner")
            if h2 not in alpha:
                raise MapError(f"alpha image {h2!r} of {h!r} is not a half-edge")
            if alpha[h2] != h:
                raise MapError(f"alpha is not an involution at {h!r}")
        for h, s in sigma.items():
            if h not in domain:
                raise MapError(f"sigma moves unknown half-edge {h!r}")
            if s not in domain:
                raise MapError(f"sigma image {s!r} of {h!r} is not a half-edge")
        full = {h: sigma.get(h, h) for h in domain}
        images = list(full.values())
        if len(set(images)) != len(domain):
            dup = next(s for s in images if images.count(s) > 1)
            raise MapError(f"sigma maps two half-edges to {dup!r}")
        pairs = sorted({tuple(sorted((h, alpha[h]))) for h in domain})
        names: list[str] = []
        for a, b in pairs:
            names.extend((a, b))
        index = {nm: i for i, nm in enumerate(names)}
        sig = tuple(index[full[nm]] for nm in names)
        r = None
        if root is not None:
            if root not in index:
                raise MapError(f"root {root!r} is not a half-edge")
            r = index[root]
        m = cls(sig, names, r)
        m.validate()
        return m

    # -- derived structure ----------------------------------------------------

    def underlying_graph(self) -> Multigraph:
        """The abstract multigraph: one vertex per rotation cycle, one edge
        per half-edge pair. ``vertex_of`` and ``edge_ids`` are the incidence
        tables from half-edges back into this graph."""
        if self._underlying is None:
            if self.is_empty:
                self._he_vertex = ()
                self._underlying = Multigraph((0,), {})
            else:
                cycles = _perm_cycles(self._sigma)
                vertex_of = [0] * len(self._sigma)
                for vid, cyc in enumerate(cycles):
                    for h in cyc:
                        vertex_of[h] = vid
                edges = {
                    self._edge_ids[k]: (vertex_of[2 * k], vertex_of[2 * k + 1])
                    for k in range(self.edge_count)
                }
                self._he_vertex = tuple(vertex_of)
                self._underlying = Multigraph(range(len(cycles)), edges)
        return self._underlying

    def vertex_of(self, h: int) -> int:
        self.underlying_graph()
        return self._he_vertex[h]

    def sigma_cycles(self) -> list[list[int]]:
        return _perm_cycles(self._sigma)

    def euler_characteristic(self) -> int:
        """Rotation cycles plus face cycles minus edges; 2 - 2 * genus."""
        if self.is_empty:
            raise MapError("the empty map has no Euler characteristic")
        n = len(self._sigma)
        faces = tuple(self._sigma[h ^ 1] for h in range(n))
        return (
            len(_perm_cycles(self._sigma))
            + len(_perm_cycles(faces))
            - self.edge_count
        )

    def genus(self) -> int:
        return (2 - self.euler_characteristic()) // 2

    # -- minors -----------------------------------------------------------------

    def _edge_arg(self, e) -> int:
        if isinstance(e, str):
            return self.edge_index(e)
        k = int(e)
        if not 0 <= k < self.edge_count:
            raise MapError(f"edge number {k} is out of range")
        return k

    def delete_edge(self, e, reroot=None) -> "CombinatorialMap":
        """Remove a non-isthmus edge, keeping the rotation order of the
        surviving half-edges around each vertex."""
        k = self._edge_arg(e)
        if self.underlying_graph().is_isthmus(self._edge_ids[k]):
            raise MapError(
                f"edge {self._edge_ids[k]!r} is an isthmus; deleting it would "
                "disconnect the map"
            )
        h1, h2 = 2 * k, 2 * k + 1
        sig = self._sigma

        def image(h: int) -> int:
            s = sig[h]
            if s == h1:
                return sig[sig[s]] if sig[h1] == h2 else sig[s]
            if s == h2:
                return sig[sig[s]] if sig[h2] == h1 else sig[s]
            return s

        return self._minor(k, image, reroot)

    def contract_edge(self, e, reroot=None) -> "CombinatorialMap":
        """Merge the two endpoint rotations of a non-loop edge: where a
        rotation reaches the removed edge it continues, in order, through
        the rotation at the other endpoint."""
        k = self._edge_arg(e)
        if self.underlying_graph().is_loop(self._edge_ids[k]):
            raise MapError(
                f"edge {self._edge_ids[k]!r} is a loop and cannot be contracted"
            )
        h1, h2 = 2 * k, 2 * k + 1
        sig = self._sigma

        def image(h: int) -> int:
            s = sig[h]
            if s == h1:
                return sig[h1] if sig[h2] == h2 else sig[h2]
            if s == h2:
                return sig[h2] if sig[h1] == h1 else sig[h1]
            return s

        return self._minor(k, image, reroot)

    def _minor(self, k: int, image, reroot) -> "CombinatorialMap":
        h1, h2 = 2 * k, 2 * k + 1
        if self.n_half_edges == 2:
            # removing the only edge leaves the terminal single-vertex map,
            # which carries no root at all
            if reroot is not None:
                raise MapError("the terminal map has no half-edge to root")
            return CombinatorialMap.empty()
        if self._root in (h1, h2):
            if reroot is None:
                raise MapError(
                    f"edge {self._edge_ids[k]!r} contains the root; supply a "
                    "replacement root"
                )
            new_root = reroot if isinstance(reroot, int) else self.index(reroot)
            if new_root in (h1, h2) or not 0 <= new_root < len(self._sigma):
                raise MapError("replacement root must be a surviving half-edge")
        else:
            if reroot is not None:
                raise MapError(
                    "a replacement root is only accepted when the removed edge "
                    "contains the root"
                )
            new_root = self._root

        def shift(h: int) -> int:
            return h - 2 if h > h2 else h

        survivors = [h for h in range(len(self._sigma)) if h not in (h1, h2)]
        sigma = tuple(shift(image(h)) for h in survivors)
        names = tuple(self._names[h] for h in survivors)
        root = None if new_root is None else shift(new_root)
        result = CombinatorialMap(sigma, names, root)
        result.validate()
        return result

    # -- isomorphism ----------------------------------------------------------

    def _canonical_from(self, h0: int) -> tuple:
        label = {h0: 0}
        order = [h0]
        i = 0
        while i < len(order):
            h = order[i]
            i += 1
            for nxt in (self._sigma[h], h ^ 1):
                if nxt not in label:
                    label[nxt] = len(order)
                    order.append(nxt)
        sig = tuple(label[self._sigma[h]] for h in order)
        alp = tuple(label[h ^ 1] for h in order)
        return (len(order), sig, alp)

    def canonical_form(self) -> tuple:
        """Root-anchored relabeling in first-visit order of the walk that
        repeatedly applies the rotation and the pairing. Two rooted maps are
        isomorphic exactly when these forms coincide."""
        if self.is_empty:
            return (0, (), ())
        if self._root is None:
            raise MapError("canonical form needs a root")
        return self._canonical_from(self._root)

    def _min_canonical(self) -> tuple:
        return min(self._canonical_from(h) for h in range(len(self._sigma)))

    def is_isomorphic(self, other: "CombinatorialMap") -> bool:
        """Structural equivalence up to half-edge relabeling; roots must
        correspond when both maps are rooted, and are ignored otherwise."""
        if self.is_empty or other.is_empty:
            return self.is_empty and other.is_empty
        if self.n_half_edges != other.n_half_edges:
            return False
        if self._root is not None and other._root is not None:
            return self.canonical_form() == other.canonical_form()
        return self._min_canonical() == other._min_canonical()

    # -- text and JSON forms ------------------------------------------------------

    def _named_sigma_cycles(self) -> list[list[str]]:
        cycles = []
        for cyc in _perm_cycles(self._sigma):
            named = [self._names[h] for h in cyc]
            j = named.index(min(named))
            cycles.append(named[j:] + named[:j])
        cycles.sort(key=lambda c: c[0])
        return cycles

    def _named_alpha_pairs(self) -> list[list[str]]:
        pairs = [
            sorted((self._names[2 * k], self._names[2 * k + 1]))
            for k in range(self.edge_count)
        ]
        pairs.sort(key=lambda p: p[0])
        return pairs

    def to_text(self, line_separator: str = "\n") -> str:
        """Serialize as ``sigma:``/``alpha:``/``root:`` records, rotation
        cycles sorted by their smallest half-edge name."""
        sig = "".join("(" + " ".join(c) + ")" for c in self._named_sigma_cycles())
        alp = "".join("(" + " ".join(p) + ")" for p in self._named_alpha_pairs())
        parts = [f"sigma: {sig}", f"alpha: {alp}"]
        if self._root is not None:
            parts.append(f"root: {self._names[self._root]}")
        return line_separator.join(parts)

    def to_json_obj(self) -> dict:
        return {
            "sigma": self._named_sigma_cycles(),
            "alpha": self._named_alpha_pairs(),
            "root": self.root_name,
        }

    @classmethod
    def from_text(cls, text: str) -> "CombinatorialMap":
        """Parse the text form. Records may be separated by newlines or
        ';'; ``#`` starts a comment; the ``root:`` record is optional."""
        records: dict[str, str] = {}
        for chunk in text.replace(";", "\n").splitlines():
            line = chunk.split("#", 1)[0].strip()
            if not line:
                continue
            key, colon, rest = line.partition(":")
            key = key.strip()
            if not colon or key not in ("sigma", "alpha", "root"):
                raise MapError(f"unrecognized map record {line!r}")
            if key in records:
                raise MapError(f"duplicate {key!r} record")
            records[key] = rest.strip()
        if "sigma" not in records or "alpha" not in records:
            raise MapError("map text needs both a sigma: and an alpha: record")

        sigma_map: dict[str, str] = {}
        for cyc in _parse_cycles(records["sigma"], "sigma"):
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                if a in sigma_map:
                    raise MapError(f"half-edge {a!r} appears twice in sigma")
                sigma_map[a] = b
        alpha_map: dict[str, str] = {}
        for cyc in _parse_cycles(records["alpha"], "alpha"):
            if len(cyc) == 1:
                raise MapError(
                    f"alpha fixes {cyc[0]!r}; every half-edge needs a distinct partner"
                )
            if len(cyc) > 2:
                raise MapError(
                    f"alpha is not an involution (cycle of length {len(cyc)})"
                )
            a, b = cyc
            for t in (a, b):
                if t in alpha_map:
                    raise MapError(f"half-edge {t!r} appears twice in alpha")
            alpha_map[a] = b
            alpha_map[b] = a
        return cls.from_permutations(sigma_map, alpha_map, records.get("root"))

    # -- equality --------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, CombinatorialMap):
            return NotImplemented
        return (
            self._sigma == other._sigma
            and self._names == other._names
            and self._root == other._root
        )

    def __hash__(self) -> int:
        return hash((self._sigma, self._names, self._root))

    def __repr__(self) -> str:
        if self.is_empty:
            return "CombinatorialMap.empty()"
        return f"CombinatorialMap.from_text({self.to_text('; ')!r})"


def _parse_cycles(text: str, what: str) -> list[list[str]]:
    cycles: list[list[str]] = []
    depth = 0
    current: list[str] = []
    token = ""
    for ch in text:
        if ch == "(":
            if depth:
                raise MapError(f"nested '(' in {what}")
            depth = 1
            current = []
            token = ""
        elif ch == ")":
            if not depth:
                raise MapError(f"unbalanced ')' in {what}")
            if token:
                current.append(token)
                token = ""
            if not current:
                raise MapError(f"empty cycle in {what}")
            cycles.append(current)
            depth = 0
        elif ch.isspace():
            if token:
                current.append(token)
                token = ""
        else:
            if not depth:
                raise MapError(f"token outside parentheses in {what}: {ch!r}")
            token += ch
    if depth:
        raise MapError(f"unbalanced '(' in {what}")
    if not cycles:
        raise MapError(f"{what} record lists no cycles")
    return cycles


# -- embeddings of an abstract graph ---------------------------------------


def _graph_incidences(graph: Multigraph) -> tuple[dict, dict]:
    """Half-edge names per vertex (edge-id order) and name -> partner name.

    Edge e contributes half-edges str(e) at its first endpoint and
    str(e) + "'" at the second (both at the same vertex for a loop).
    """
    at_vertex: dict = {v: [] for v in graph.vertices}
    partner: dict[str, str] = {}
    for e in graph.edge_ids:
        u, v = graph.endpoints(e)
        a, b = str(e), str(e) + "'"
        if a in partner or b in partner:
            raise MapError(
                f"edge id {e!r} yields a clashing half-edge name; rename it"
            )
        partner[a] = b
        partner[b] = a
        at_vertex[u].append(a)
        at_vertex[v].append(b)
    return at_vertex, partner


def embed(graph: Multigraph, rotations: Mapping | None = None,
          root: str | None = None) -> CombinatorialMap:
    """Choose an embedding of a connected multigraph.

    ``rotations[v]``, when given, lists the half-edge names around v in
    counterclockwise order (default: edge-id order). Half-edge names derive
    from edge ids: edge e becomes the pair str(e) / str(e) + "'". The root
    defaults to the first half-edge of the smallest edge id.
    """
    if not graph.is_connected():
        raise MapError("only connected graphs have embeddings")
    if graph.edge_count == 0:
        raise MapError("an embedding needs at least one edge")
    at_vertex, partner = _graph_incidences(graph)
    if rotations:
        for v, order in rotations.items():
            order = list(order)
            if v not in at_vertex:
                raise MapError(f"rotation given for unknown vertex {v!r}")
            if sorted(order) != sorted(at_vertex[v]):
                raise MapError(
                    f"rotation at vertex {v!r} must permute {sorted(at_vertex[v])}"
                )
            at_vertex[v] = order
    sigma_map: dict[str, str] = {}
    for order in at_vertex.values():
        for a, b in zip(order, order[1:] + order[:1]):
            sigma_map[a] = b
    names: list[str] = []
    for e in graph.edge_ids:
        names.extend((str(e), str(e) + "'"))
    index = {nm: i for i, nm in enumerate(names)}
    sigma = tuple(index[sigma_map[nm]] for nm in names)
    if root is None:
        root = names[0]
    if root not in index:
        raise MapError(f"root {root!r} is not a half-edge of this embedding")
    m = CombinatorialMap(sigma, names, index[root])
    m.validate()
    return m


def all_rotation_systems(graph: Multigraph) -> Iterator[CombinatorialMap]:
    """Every embedding of the graph, one map per rotation system (unrooted).

    There are prod over vertices of (degree - 1)! of them; the first
    incident half-edge at each vertex is pinned so that each cyclic order
    appears exactly once.
    """
    at_vertex, _ = _graph_incidences(graph)
    vs = sorted(at_vertex, key=str)
    choices = []
    for v in vs:
        inc = at_vertex[v]
        if len(inc) <= 1:
            choices.append([tuple(inc)])
        else:
            choices.append([
                (inc[0],) + rest for rest in itertools.permutations(inc[1:])
            ])
    for combo in itertools.product(*choices):
        yield embed(graph, rotations=dict(zip(vs, combo)), root=None).with_root(None)
