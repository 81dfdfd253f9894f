class AdiabatError(Exception):
    pass
