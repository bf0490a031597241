"""Hexagonal 2-colex lattices on a torus with a proper face 3-coloring.

Construction
------------
Hexagon centers form a triangular lattice Z^2 with face color (a - b) mod 3.
The torus identifies points modulo the sublattice generated by r*(1,1) and
(3,0), both of which preserve the coloring.  Cells are then labeled by
(c, j) in Z_3 x Z_r where c is the color and j the position along the
color-preserving (1,1) axis, so the lattice has N = 3r hexagons, 2N vertices
(the qubits) and 3N edges.

Vertices are the up/down triangles of the cell lattice, written (s, c, j)
with s = 0 for "up" and s = 1 for "down".  Each vertex lies in exactly three
hexagons, one of each color, and carries one edge of each color.  Edges join
two plaquettes of their own color in the shrunk lattice; the (1,1)-oriented
edges of color k chain all r plaquettes of color k into a single cycle, which
is what makes the global open strings and the branching-point census work at
every size.
"""

from __future__ import annotations

from dataclasses import dataclass

RED, GREEN, BLUE = 0, 1, 2
COLOR_NAMES = ("R", "G", "B")


@dataclass(frozen=True)
class ColoredString:
    """A string on the shrunk lattice of one color.

    ``links`` holds the traversed same-color lattice edges as vertex pairs;
    ``vertices`` is the flattened qubit support in path order.  ``homology``
    tags the class on the torus: "trivial" for open strings, "cycle-1" for
    loops winding the color-preserving axis, "cycle-2" for the other axis.
    """

    color: int
    vertices: tuple
    links: tuple
    homology: str


@dataclass(frozen=True)
class ExcitationGenerators:
    """Qubit census behind the excitation generators: three global open
    strings, two branching points, four leftover qubits."""

    strings: tuple  # one ColoredString per color, homology "trivial"
    branching_x: int
    branching_z: int
    leftover: tuple


@dataclass(frozen=True)
class ValidationReport:
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class ColexLattice:
    """Immutable hexagonal 2-colex on a torus.

    vertices[i] is the (s, c, j) triple of qubit i; edges are (u, v, color)
    with u < v; plaquettes are (color, vertex cycle).  torus_dims stores the
    two periods (3 along the color-cycling axis, r along the other).
    """

    n_plaquettes: int
    vertices: tuple
    edges: tuple
    plaquettes: tuple
    torus_dims: tuple

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def r(self) -> int:
        return self.torus_dims[1]

    def vertex_index(self, s, c, j) -> int:
        r = self.r
        return 2 * (3 * (j % r) + c % 3) + s

    def plaquette_index(self, color, j) -> int:
        return (color % 3) * self.r + (j % self.r)

    def plaquettes_of_color(self, color):
        return [i for i, (c, _) in enumerate(self.plaquettes) if c == color]

    def vertex_plaquettes(self, v):
        """Indices of the plaquettes containing vertex v (three on a valid lattice)."""
        return [i for i, (_, cyc) in enumerate(self.plaquettes) if v in cyc]

    def to_json_dict(self) -> dict:
        return {
            "n_plaquettes": self.n_plaquettes,
            "torus_dims": list(self.torus_dims),
            "vertices": [list(v) for v in self.vertices],
            "edges": [[u, v, c] for (u, v, c) in self.edges],
            "plaquettes": [
                {"color": COLOR_NAMES[c], "vertices": list(cyc)} for (c, cyc) in self.plaquettes
            ],
        }

    @classmethod
    def from_json_dict(cls, d) -> "ColexLattice":
        color_idx = {name: i for i, name in enumerate(COLOR_NAMES)}
        return cls(
            n_plaquettes=int(d["n_plaquettes"]),
            vertices=tuple(tuple(v) for v in d["vertices"]),
            edges=tuple((u, v, c) for u, v, c in d["edges"]),
            plaquettes=tuple(
                (color_idx[p["color"]], tuple(p["vertices"])) for p in d["plaquettes"]
            ),
            torus_dims=tuple(d["torus_dims"]),
        )


def admissible_sizes(limit=30):
    """Admissible plaquette counts up to limit (every multiple of 3)."""
    return [n for n in range(3, limit + 1, 3)]


def build_hex_torus(size: int) -> ColexLattice:
    """Build the N = size lattice; size must be a positive multiple of 3.

    Plaquette indices are color-major: color k occupies k*r .. k*r + r - 1.
    """
    if not isinstance(size, int) or size < 3 or size % 3 != 0:
        raise ValueError(
            f"no valid 3-colorable hexagonal torus with {size} plaquettes: "
            f"the face coloring requires a multiple of 3 "
            f"(admissible sizes: {', '.join(map(str, admissible_sizes()))}, ...)"
        )
    r = size // 3

    def vidx(s, c, j):
        return 2 * (3 * (j % r) + c % 3) + s

    vertices = []
    for j in range(r):
        for c in range(3):
            vertices.append((0, c, j))
            vertices.append((1, c, j))
    # sort into index order (0, c, j) -> 2*(3j+c), (1, c, j) -> 2*(3j+c)+1
    vertices = tuple(sorted(vertices, key=lambda v: vidx(*v)))

    edges = set()
    for j in range(r):
        for c in range(3):
            u = vidx(0, c, j)
            for v, color in (
                (vidx(1, c, j), (c + 1) % 3),
                (vidx(1, (c + 2) % 3, j - 1), (c + 2) % 3),
                (vidx(1, (c + 1) % 3, j), c),
            ):
                edges.add((min(u, v), max(u, v), color))
    edges = tuple(sorted(edges))

    plaquettes = []
    for c in range(3):
        for j in range(r):
            cyc = (
                vidx(0, c, j),
                vidx(1, c, j),
                vidx(0, c - 1, j),
                vidx(1, c + 1, j - 1),
                vidx(0, c + 1, j - 1),
                vidx(1, c + 2, j - 1),
            )
            plaquettes.append((c, cyc))
    plaquettes = tuple(plaquettes)

    lat = ColexLattice(
        n_plaquettes=size,
        vertices=vertices,
        edges=edges,
        plaquettes=plaquettes,
        torus_dims=(3, r),
    )
    report = validate(lat)
    if not report.ok:
        raise AssertionError(f"constructed lattice failed validation: {report.failures}")
    return lat


def minimal_fixture() -> ColexLattice:
    """Hardcoded N = 3 adjacency, independent of the generator."""
    return ColexLattice(
        n_plaquettes=3,
        vertices=((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 2, 0), (1, 2, 0)),
        edges=(
            (0, 1, 1),
            (0, 3, 0),
            (0, 5, 2),
            (1, 2, 0),
            (1, 4, 2),
            (2, 3, 2),
            (2, 5, 1),
            (3, 4, 1),
            (4, 5, 0),
        ),
        plaquettes=(
            (0, (0, 1, 4, 3, 2, 5)),
            (1, (2, 3, 0, 5, 4, 1)),
            (2, (4, 5, 2, 1, 0, 3)),
        ),
        torus_dims=(3, 1),
    )


def _boundary_pairs(cycle):
    return [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]


def validate(lat: ColexLattice) -> ValidationReport:
    """Check every structural invariant; failures are reported, not raised."""
    fails = []
    n_p = len(lat.plaquettes)
    n_v = len(lat.vertices)
    n_e = len(lat.edges)
    if n_p != lat.n_plaquettes:
        fails.append(f"plaquette list length {n_p} != declared {lat.n_plaquettes}")
    if n_v != 2 * n_p:
        fails.append(f"vertex count {n_v} != 2N = {2 * n_p}")
    if n_e != 3 * n_p:
        fails.append(f"edge count {n_e} != 3N = {3 * n_p}")

    # every vertex in exactly 3 plaquettes, one per color
    membership = {v: [] for v in range(n_v)}
    for p, (color, cyc) in enumerate(lat.plaquettes):
        for v in cyc:
            if v not in membership:
                fails.append(f"plaquette {p} references unknown vertex {v}")
            else:
                membership[v].append(color)
    for v, colors in membership.items():
        if sorted(colors) != [0, 1, 2]:
            fails.append(f"vertex {v} lies in plaquettes of colors {sorted(colors)}, not one of each")

    # every vertex carries one edge of each color
    vertex_edge_colors = {v: [] for v in range(n_v)}
    for (u, v, color) in lat.edges:
        if u in vertex_edge_colors:
            vertex_edge_colors[u].append(color)
        if v in vertex_edge_colors:
            vertex_edge_colors[v].append(color)
    for v, colors in vertex_edge_colors.items():
        if sorted(colors) != [0, 1, 2]:
            fails.append(f"vertex {v} carries edges of colors {sorted(colors)}, not one of each")

    # plaquette boundaries walk lattice edges; each edge borders exactly two
    # faces, of the two colors other than its own (so same-colored plaquettes
    # never share an edge and each edge joins same-colored plaquettes of its
    # own color through its endpoints)
    edge_lookup = {}
    for (u, v, color) in lat.edges:
        edge_lookup[(u, v)] = color
    border = {e: [] for e in edge_lookup}
    for p, (color, cyc) in enumerate(lat.plaquettes):
        if len(cyc) != len(set(cyc)):
            fails.append(f"plaquette {p} repeats a vertex in its cycle")
        for a, b in _boundary_pairs(cyc):
            key = (min(a, b), max(a, b))
            if key not in edge_lookup:
                fails.append(f"plaquette {p} boundary pair {key} is not a lattice edge")
            else:
                border[key].append((p, color))
    for key, faces in border.items():
        ecolor = edge_lookup[key]
        if len(faces) != 2:
            fails.append(f"edge {key} borders {len(faces)} plaquette slots, expected 2")
            continue
        (p1, c1), (p2, c2) = faces
        if c1 == c2:
            fails.append(f"edge {key}: same-colored plaquettes {p1},{p2} share it")
        elif {c1, c2, ecolor} != {0, 1, 2}:
            fails.append(
                f"edge {key} has color {ecolor} but borders colors {c1},{c2}"
            )

    return ValidationReport(failures=tuple(fails))


def _t1_links(lat, color):
    """The (1,1)-oriented links of a color: chain plaquette j to j+1."""
    out = []
    for j in range(lat.r):
        u = lat.vertex_index(0, color, j)
        v = lat.vertex_index(1, (color + 1) % 3, j)
        out.append((u, v))
    return out


def _t2_link(lat, color, j=0):
    """The (-2,1)-oriented link of a color at position j."""
    u = lat.vertex_index(0, (color + 2) % 3, j)
    v = lat.vertex_index(1, (color + 2) % 3, j)
    return (u, v)


def _string(color, links, homology):
    verts = tuple(v for link in links for v in link)
    return ColoredString(color=color, vertices=verts, links=tuple(links), homology=homology)


def nontrivial_loops(lat: ColexLattice):
    """The four nontrivial loops backing the logical operators.

    C1: red loop winding the color-preserving axis (passes every red
    plaquette); C2: the blue one; C3/C4: red/blue loops in the other
    homology class (one sideways link plus one chaining link, weight 4).
    """
    c1 = _string(RED, _t1_links(lat, RED), "cycle-1")
    c2 = _string(BLUE, _t1_links(lat, BLUE), "cycle-1")
    c3 = _string(RED, [_t2_link(lat, RED), _t1_links(lat, RED)[0]], "cycle-2")
    c4 = _string(BLUE, [_t2_link(lat, BLUE), _t1_links(lat, BLUE)[0]], "cycle-2")
    return c1, c2, c3, c4


def green_loop(lat: ColexLattice) -> ColoredString:
    """Green loop in the cycle-1 class; the product C1*C2*green covers every
    qubit once and so reduces to a plaquette product."""
    return _string(GREEN, _t1_links(lat, GREEN), "cycle-1")


def excitation_generators(lat: ColexLattice) -> ExcitationGenerators:
    """Global open strings, branching points, leftover qubits.

    The open string of color k keeps the (1,1)-links at positions
    j = 0 .. r-2, visiting all r plaquettes of that color; the dropped
    j = r-1 links free six qubits, two of which serve as branching points.
    """
    strings = []
    for color in range(3):
        links = _t1_links(lat, color)[: lat.r - 1]
        strings.append(_string(color, links, "trivial"))
    free = []
    for color in range(3):
        u, v = _t1_links(lat, color)[lat.r - 1]
        free.extend([u, v])
    b_x = lat.vertex_index(0, RED, lat.r - 1)
    b_z = lat.vertex_index(1, GREEN, lat.r - 1)
    leftover = tuple(sorted(set(free) - {b_x, b_z}))
    return ExcitationGenerators(
        strings=tuple(strings), branching_x=b_x, branching_z=b_z, leftover=leftover
    )
