"""Kottwitz' splitting of the torus normalizer and signed Chevalley structure constants."""
from .constants import (
    StructureTable,
    TitsTriple,
    bracket,
    canonical_key,
    full_table,
    n_ordered,
    order_triple,
    p_string,
    structure_constant,
)
from .elements import BasisLabel, LieElement
from .kottwitz import (
    SignTable,
    build_sign_table,
    c_sign,
    f_function,
    gamma_factor,
    height_defect,
    splitting_action,
    tau,
    term,
    theta,
)
from .rootsys import (
    CartanError,
    CartanMatrix,
    CartanSyntaxError,
    InfiniteTypeError,
    RootSystem,
    build_root_system,
    cartan_matrix,
    parse_type,
    read_cartan_file,
)
from .weyl import SignedPermutation, WeylElement, compose, inversion_set, reduced_word

__all__ = [
    "StructureTable",
    "TitsTriple",
    "bracket",
    "canonical_key",
    "full_table",
    "n_ordered",
    "order_triple",
    "p_string",
    "structure_constant",
    "BasisLabel",
    "LieElement",
    "SignTable",
    "build_sign_table",
    "c_sign",
    "f_function",
    "gamma_factor",
    "height_defect",
    "splitting_action",
    "tau",
    "term",
    "theta",
    "CartanError",
    "CartanMatrix",
    "CartanSyntaxError",
    "InfiniteTypeError",
    "RootSystem",
    "build_root_system",
    "cartan_matrix",
    "parse_type",
    "read_cartan_file",
    "SignedPermutation",
    "WeylElement",
    "compose",
    "inversion_set",
    "reduced_word",
]

__version__ = "0.1.0"
