"""Maass forms, the Jacquet transform and the Kirillov seed construction."""

from .expansion import (CasimirResult, MaassValue, casimir_apply_fd, expansion_prefactor,
                        maass_eval)
from .forms import (BUILTIN_FORMS, MaassForm, builtin_form, delta_form, hecke_failures,
                    ingest_maass_csv, ingest_maass_text, inverse_square_form, load_form)
from .iwasawa import GroupPoint, iwasawa
from .kirillov import (HeightWeight, SeedSpec, ShiftedCoefficient, fourier_orthogonality,
                       induced_window, integrated_shifted_coefficient, kirillov_seed_expansion,
                       shifted_convolution, shifted_fourier_coefficient)
from .lfunction import LValue, l_critical_line, l_function_eval, l_moment
from .whittaker import jacquet_closed_form, jacquet_transform, phi_ell, whittaker_constant
