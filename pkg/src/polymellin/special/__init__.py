from polymellin.special.gamma import gamma, loggamma, rgamma
from polymellin.special.hypergeometric import euler_transformations, gauss_2f1

__all__ = ["euler_transformations", "gamma", "gauss_2f1", "loggamma", "rgamma"]
