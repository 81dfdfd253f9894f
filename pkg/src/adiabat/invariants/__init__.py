from .futaki import FutakiRecord, futaki_record, transverse_futaki, transverse_futaki_terms, submersion_futaki, \
    submersion_futaki_terms, moment_pairing, classical_futaki, leading_term, twisted_map_functional, \
    omega_shift_variation
from .adiabatic import AdiabaticRow, AdiabaticTable, adiabatic_table, average_expansion_defects, \
    fine_expansion_defects, fitted_order, ORDER_FLOOR
