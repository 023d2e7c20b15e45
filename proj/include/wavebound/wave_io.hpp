#pragma once

#include <string>

#include <wavebound/certify.hpp>
#include <wavebound/height_field.hpp>

namespace wavebound {

// On-disk wave format "wavebound-wave-1": params, wavelength, head, grid
// metadata and the row-major height table, plus the solver's residual norms
// and convergence verdict. Doubles survive a write/read cycle bit-exactly.
void write_wave_json(const WaveField& wave, const std::string& path);
WaveField read_wave_json(const std::string& path);

std::string wave_to_json_text(const WaveField& wave);
WaveField wave_from_json_text(const std::string& text);

// Certificate format "wavebound-certificate-1". Optional quantities (the
// conjugate depths and depth-comparison margins) are omitted when absent.
std::string certificate_to_json_text(const BoundCertificate& cert);
void write_certificate_json(const BoundCertificate& cert, const std::string& path);

// Sweep tables. CSV columns, in order:
//   omega,g,m,L,amplitude,theorem_bound,refined_bound,Q,Qc,Q0,
//   d_minus,d_plus,d0,inf_eta,sup_eta,flags
// Numbers are written with 17 significant digits; cells whose quantity does
// not exist (failed rows, absent conjugate depths) are left empty and the
// flags cell of a failed row reads "error".
std::string sweep_to_csv(const SweepTable& table);
std::string sweep_to_json_text(const SweepTable& table);
void write_sweep(const SweepTable& table, const std::string& path, const std::string& format);

}  // namespace wavebound
