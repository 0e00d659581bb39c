"""Open book foliations: complexes, movies, moves, normalization and braid checks."""

from .errors import OBFError
from .page import Monodromy, Page, fdtc, new_page, parse_monodromy
from .foliation import (
    FoliationComplex,
    euler_audit,
    self_linking,
    singularity_counts,
    sl_difference,
    stabilization_ledger,
    validate,
)
from .movie import Movie, braid_boundary, interpret, load_movie, parse_movie, serialize_movie
from .moves import applicable_moves, apply_move
from .normalize import BraidData, OpenBook, normalize, verify_jk
from .braids import BraidWord, bennequin_sl, markov_search, parse_braid, writhe
from .fixtures import counterexample_family, fixture, fixture_names

__version__ = "0.1.0"
