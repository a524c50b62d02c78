"""
CSS code model: validated (g2, h1) pairs, Tanner graphs, hypergraph products,
builtin small codes, and the on-disk code manifest
"""

from functools import cached_property
from pathlib import Path
from typing import List, Optional, Tuple, Union
import json
import logging
import re
import numpy as np
from pydantic import BaseModel, Field

from . import gf2
from .alist_io import load_alist, save_alist
from .exceptions import CodeValidationError, ContractViolation
from .gf2 import BitMatrix, BitVector

logger = logging.getLogger(__name__)


class TannerGraph:
    """
    Bipartite graph of h1: VN v connects to CN c iff h1(c, v) = 1

    Edges are numbered check-major (row by row, ascending columns). Besides the
    neighbor lists, the graph keeps per-edge endpoints and, for every edge, the
    other edges of the same check ("siblings"), which is what a CN update reads.
    """

    def __init__(self, h1: BitMatrix):
        dense = h1.to_array()
        self.n_checks, self.n_vars = dense.shape
        checks, variables = np.nonzero(dense)
        self.edge_check = checks.astype(np.int64)
        self.edge_var = variables.astype(np.int64)
        self.edge_count = int(checks.size)

        self.check_edges: List[Tuple[int, ...]] = [() for _ in range(self.n_checks)]
        self.var_edges: List[Tuple[int, ...]] = [() for _ in range(self.n_vars)]
        check_lists: List[List[int]] = [[] for _ in range(self.n_checks)]
        var_lists: List[List[int]] = [[] for _ in range(self.n_vars)]
        for e, (c, v) in enumerate(zip(checks.tolist(), variables.tolist())):
            check_lists[c].append(e)
            var_lists[v].append(e)
        self.check_edges = [tuple(edges) for edges in check_lists]
        self.var_edges = [tuple(edges) for edges in var_lists]

        self.check_neighbors: List[Tuple[int, ...]] = [
            tuple(int(self.edge_var[e]) for e in edges) for edges in self.check_edges
        ]
        self.var_neighbors: List[Tuple[int, ...]] = [
            tuple(int(self.edge_check[e]) for e in edges) for edges in self.var_edges
        ]
        self.edge_siblings: List[Tuple[int, ...]] = [
            tuple(f for f in self.check_edges[c] if f != e)
            for e, c in enumerate(checks.tolist())
        ]

    @cached_property
    def sibling_matrix(self) -> np.ndarray:
        """
        (edge_count, max check degree - 1) sibling edge indices per edge

        Short rows are padded with edge_count, which indexes one slot past the
        last edge; message buffers keep a saturated value there.
        """
        width = max((len(s) for s in self.edge_siblings), default=0)
        padded = np.full((self.edge_count, width), self.edge_count, dtype=np.int64)
        for e, siblings in enumerate(self.edge_siblings):
            padded[e, : len(siblings)] = siblings
        return padded

    @cached_property
    def check_edge_arrays(self) -> List[np.ndarray]:
        return [np.array(edges, dtype=np.int64) for edges in self.check_edges]

    @cached_property
    def var_edge_arrays(self) -> List[np.ndarray]:
        return [np.array(edges, dtype=np.int64) for edges in self.var_edges]

    @property
    def isolated_vars(self) -> List[int]:
        return [v for v, edges in enumerate(self.var_edges) if not edges]

    def check_degree(self, c: int) -> int:
        return len(self.check_edges[c])

    def var_degree(self, v: int) -> int:
        return len(self.var_edges[v])

    def checks_by_degree(self) -> List[Tuple[np.ndarray, np.ndarray]]:
        """Groups of (check indices, edge-index matrix) sharing one degree, for vectorized CN passes"""
        groups = {}
        for c, edges in enumerate(self.check_edges):
            if edges:
                groups.setdefault(len(edges), []).append(c)
        return [
            (
                np.array(members, dtype=np.int64),
                np.array([self.check_edges[c] for c in members], dtype=np.int64),
            )
            for _, members in sorted(groups.items())
        ]

    def syndrome_of(self, x_hat: np.ndarray) -> np.ndarray:
        """Parity of each check under a 0/1 estimate"""
        if self.edge_count == 0:
            return np.zeros(self.n_checks, dtype=np.uint8)
        counts = np.bincount(self.edge_check, weights=x_hat[self.edge_var], minlength=self.n_checks)
        return (counts.astype(np.int64) & 1).astype(np.uint8)

    def to_matrix(self) -> BitMatrix:
        dense = np.zeros((self.n_checks, self.n_vars), dtype=np.uint8)
        for c, neighbors in enumerate(self.check_neighbors):
            dense[c, list(neighbors)] = 1
        return BitMatrix.from_array(dense)


class CssCode:
    """
    CSS code given by X-stabilizer generators g2 and Z-stabilizer generators h1

    X errors are detected by h1 (syndrome s_x = h1·x) and are harmless when
    they lie in the rowspace of g2.
    """

    def __init__(self, g2: BitMatrix, h1: BitMatrix, name: str = "", d: Optional[int] = None):
        self.g2 = g2
        self.h1 = h1
        self.name = name
        self.d = d
        self.n = h1.cols
        self.rank_g2 = gf2.rank(g2)
        self.rank_h1 = gf2.rank(h1)
        self.k = self.n - self.rank_g2 - self.rank_h1

    @cached_property
    def tanner_graph(self) -> TannerGraph:
        return TannerGraph(self.h1)

    @cached_property
    def stabilizer_basis(self) -> Tuple[BitMatrix, List[int]]:
        return gf2.row_reduce(self.g2)

    def is_stabilizer(self, vector: BitVector) -> bool:
        """Rowspace(g2) membership using the cached reduced basis"""
        basis, pivots = self.stabilizer_basis
        return gf2.reduces_to_zero(basis, pivots, vector)

    def parameters(self) -> str:
        d = self.d if self.d is not None else "?"
        return f"[[{self.n},{self.k},{d}]]"

    def __repr__(self) -> str:
        return f"CssCode({self.name!r}, {self.parameters()})"


def make_css(g2: BitMatrix, h1: BitMatrix, name: str = "", d: Optional[int] = None) -> CssCode:
    """Validate the commutativity condition g2·h1ᵀ = 0 and build the code"""
    if g2.cols != h1.cols:
        raise ContractViolation(f"g2 has {g2.cols} columns but h1 has {h1.cols}")
    if g2.rows and h1.rows:
        product = gf2.mul_transpose(g2, h1)
        offending = np.argwhere(product)
        if offending.size:
            i, j = (int(x) for x in offending[0])
            raise CodeValidationError(
                f"stabilizers anticommute: row {i} of g2 and row {j} of h1 have odd overlap"
            )
    code = CssCode(g2, h1, name=name, d=d)
    isolated = code.tanner_graph.isolated_vars
    if isolated:
        logger.warning(
            f"code {name!r} has {len(isolated)} isolated variable node(s) "
            f"(first: {isolated[:5]}); errors there are undetectable"
        )
    return code


def hypergraph_product(ha: BitMatrix, hb: BitMatrix, name: str = "") -> CssCode:
    """
    Hypergraph product of two classical check matrices

    h1 = [ha ⊗ I_nb | I_ma ⊗ hbᵀ]   (ma·nb rows)
    g2 = [I_na ⊗ hb | haᵀ ⊗ I_mb]   (na·mb rows)
    over n = na·nb + ma·mb qubits.
    """
    if ha.rows == 0 or ha.cols == 0 or hb.rows == 0 or hb.cols == 0:
        raise ContractViolation("hypergraph product seeds must be nonempty")
    a = ha.to_array().astype(np.uint8)
    b = hb.to_array().astype(np.uint8)
    ma, na = a.shape
    mb, nb = b.shape
    h1 = np.hstack([np.kron(a, np.eye(nb, dtype=np.uint8)), np.kron(np.eye(ma, dtype=np.uint8), b.T)])
    g2 = np.hstack([np.kron(np.eye(na, dtype=np.uint8), b), np.kron(a.T, np.eye(mb, dtype=np.uint8))])
    return make_css(BitMatrix.from_array(g2 & 1), BitMatrix.from_array(h1 & 1), name=name)


def tanner_graph(code: CssCode) -> TannerGraph:
    return code.tanner_graph


def repetition_check(length: int) -> BitMatrix:
    """(length-1) x length bidiagonal check matrix of the repetition code"""
    if length < 2:
        raise ContractViolation("repetition code needs length >= 2")
    dense = np.zeros((length - 1, length), dtype=np.uint8)
    for i in range(length - 1):
        dense[i, i] = dense[i, i + 1] = 1
    return BitMatrix.from_array(dense)


def hamming_check(r: int = 3) -> BitMatrix:
    """r x (2^r - 1) Hamming check matrix; column j is the binary expansion of j + 1"""
    n = 2 ** r - 1
    dense = np.array([[((j + 1) >> i) & 1 for j in range(n)] for i in range(r)], dtype=np.uint8)
    return BitMatrix.from_array(dense)


_REP_PATTERN = re.compile(r"^hgp:rep(\d+)$")

BUILTIN_CODES = {
    "hgp:rep3": "hypergraph product of the [3,1] repetition code with itself, [[13,1,3]]",
    "hgp:rep5": "hypergraph product of the [5,1] repetition code with itself, [[41,1,5]]",
    "hgp:hamming7": "hypergraph product of the Hamming(7,4) check matrix with itself, [[58,16,3]]",
    "css:steane": "Steane-style pair g2 = h1 = Hamming(7,4) check matrix, [[7,1,3]]",
}


def builtin_code(name: str) -> CssCode:
    """Construct a named small code without external files"""
    match = _REP_PATTERN.match(name)
    if match:
        length = int(match.group(1))
        code = hypergraph_product(repetition_check(length), repetition_check(length), name=name)
        code.d = length
        return code
    if name == "hgp:hamming7":
        code = hypergraph_product(hamming_check(3), hamming_check(3), name=name)
        code.d = 3
        return code
    if name == "css:steane":
        return make_css(hamming_check(3), hamming_check(3), name=name, d=3)
    raise ContractViolation(f"unknown builtin code {name!r}; known: {sorted(BUILTIN_CODES)}")


class CodeManifest(BaseModel):
    """On-disk description of a code: two alist files plus claimed parameters"""

    name: str
    n: int = Field(ge=1)
    k: int = Field(ge=0)
    d: Optional[int] = Field(default=None, ge=1)
    path_g2: str
    path_h1: str


def load_code_manifest(path: Union[str, Path]) -> CssCode:
    """Load a manifest; alist paths are resolved relative to the manifest file"""
    path = Path(path)
    with open(path, "r") as f:
        manifest = CodeManifest.model_validate(json.load(f))
    g2 = load_alist(path.parent / manifest.path_g2)
    h1 = load_alist(path.parent / manifest.path_h1)
    code = make_css(g2, h1, name=manifest.name, d=manifest.d)
    if code.n != manifest.n or code.k != manifest.k:
        raise CodeValidationError(
            f"manifest {path} claims [[{manifest.n},{manifest.k}]] but matrices give "
            f"[[{code.n},{code.k}]]"
        )
    return code


def save_code_manifest(code: CssCode, path: Union[str, Path]) -> CodeManifest:
    """Write g2/h1 alist files next to a manifest and return the manifest written"""
    path = Path(path)
    stem = path.stem
    g2_name, h1_name = f"{stem}_g2.alist", f"{stem}_h1.alist"
    save_alist(code.g2, path.parent / g2_name)
    save_alist(code.h1, path.parent / h1_name)
    manifest = CodeManifest(
        name=code.name or stem, n=code.n, k=code.k, d=code.d, path_g2=g2_name, path_h1=h1_name
    )
    with open(path, "w") as f:
        json.dump(manifest.model_dump(), f, indent=2)
    return manifest


def resolve_code(source: str) -> CssCode:
    """Builtin name (hgp:..., css:...) or path to a manifest JSON file"""
    if source.startswith(("hgp:", "css:")):
        return builtin_code(source)
    return load_code_manifest(source)
