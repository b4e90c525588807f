"""
ghz_ising: modelo de Ising 1D com campo transverso e provas GHZ (all-versus-nothing)
"""

__version__ = "0.1.0"
