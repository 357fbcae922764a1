"""The Kolmogorov limiting distribution in double precision."""

from .dist import Branch, DistTriple, kolmogorov_cdf, kolmogorov_pdf, kolmogorov_sf, kolmogorov_triple
from .errors import DomainError, InvalidPairError
from .quantile import NRReport, ProbPair, kolmogi, kolmogi_cdf, kolmogi_sf
from .smirnov import ecdf_statistics, maag_dicaire_sf, smirnov_sf_exact, smirnov_sf_limit

__all__ = [
    "Branch", "DistTriple", "DomainError", "InvalidPairError", "NRReport", "ProbPair",
    "ecdf_statistics", "kolmogi", "kolmogi_cdf", "kolmogi_sf", "kolmogorov_cdf",
    "kolmogorov_pdf", "kolmogorov_sf", "kolmogorov_triple", "maag_dicaire_sf",
    "smirnov_sf_exact", "smirnov_sf_limit",
]
