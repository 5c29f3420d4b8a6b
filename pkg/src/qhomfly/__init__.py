"""Colored HOMFLY polynomials of braid closures via q-Ehrhart state sums."""

from .algebra import Laurent, LinkPoly, QSeries, RatFuncX, maxdeg, render_linkpoly, series_at_q_infinity
from .analysis import bounds, head, negative_twobraid_head, slopes, unknot_head_series
from .diagram import BraidWord, ResolutionIndex, parse_braid, resolve, stats
from .oracles import crosscheck, homfly_skein, t2_formula
from .qehrhart import EhrhartPoly, LinearForm, LatticeSimplex, Poset, ehrhart, evaluate_ehrhart, load_poset
from .statesum import HomflyConfig, antisym_homfly, antisymmetric_eval, colored_homfly, symmetric_eval

__all__ = [
    "Laurent", "LinkPoly", "QSeries", "RatFuncX", "maxdeg", "render_linkpoly", "series_at_q_infinity",
    "bounds", "head", "negative_twobraid_head", "slopes", "unknot_head_series",
    "BraidWord", "ResolutionIndex", "parse_braid", "resolve", "stats",
    "crosscheck", "homfly_skein", "t2_formula",
    "EhrhartPoly", "LinearForm", "LatticeSimplex", "Poset", "ehrhart", "evaluate_ehrhart", "load_poset",
    "HomflyConfig", "antisym_homfly", "antisymmetric_eval", "colored_homfly", "symmetric_eval",
]
__version__ = "0.1.0"
