"""Orbit 2-designs on multi-dimensional grids under the product of symmetric groups."""

from .arrays import ArrayFunction, array_of, arrays_equivalent, full_array, translate_array, uniform_profile
from .constructions import assemble, des2, des3, des4_2, des_shape, lambda_des2_closed_form
from .criteria import DesignReport, check_2design, check_reduced, lambda_of, n_direct, n_from_arrays, t_design_bruteforce
from .grid import Block, GridShape, PermTuple, apply, cell_geometry, enumerate_cells, project
from .search import block_search, param_search, verify_catalog
from .symmetry import ft_prefilter, is_flag_transitive, same_orbit, stabilizer

__all__ = [
    "ArrayFunction", "Block", "DesignReport", "GridShape", "PermTuple",
    "apply", "array_of", "arrays_equivalent", "assemble", "block_search", "cell_geometry",
    "check_2design", "check_reduced", "des2", "des3", "des4_2", "des_shape", "enumerate_cells",
    "ft_prefilter", "full_array", "is_flag_transitive", "lambda_des2_closed_form", "lambda_of",
    "n_direct", "n_from_arrays", "param_search", "project", "same_orbit", "stabilizer",
    "t_design_bruteforce", "translate_array", "uniform_profile", "verify_catalog",
]
