#pragma once

namespace tsteer {

inline constexpr const char* version = "1.0.0";

// Decoherence factor convention recorded in output metadata:
// F(t) = <psi| e^{+i H_+ t} e^{-i H_- t} |psi> = Tr[rho_e U_+^dag U_-].
inline constexpr const char* f_convention = "trace_rho_udagplus_uminus";

}  // namespace tsteer
