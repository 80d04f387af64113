"""pyhopf : numerical lab for Hopf real hypersurfaces of CP^n_p"""

__all__ = ["ambient", "catalog", "weingarten", "spectral", "verify", "config",
           "errors", "utils"]
