#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "specenh/io.hpp"

namespace specenh {

// Implementations behind the command line verbs. Each reads options from a
// JSON config, writes its artifacts under out_dir (created if needed), and
// returns structured results where the verb reports any. Bad configs raise
// ConfigError / DomainError; numeric failures propagate from the library.
// The seed argument, when set, overrides the config's "seed" field; the
// fallback default is 20090101.

// Writes truth.csv (line list), spectrum.csv (broadened), and noisy.csv when
// noise_level > 0. Config: grid, lines, broadening, noise_level, seed; every
// field has a default (unit line, unit gaussian kernel, 5% noise).
void cmd_synth(const json& config, const std::string& out_dir,
               std::optional<std::uint64_t> seed);

// Deconvolves a spectrum and writes enhanced.csv plus report.json with keys
// alpha, residual, psi_norm, bound, fwhm{before,after,ratio}; returns the
// report. The data comes from an "input" CSV or is synthesized in place from
// lines/broadening/noise_level. "enhancement" is required; "reg" carries
// either a fixed "alpha" or "delta"/"noise_level" (+ optional "tau") for the
// discrepancy choice. A source condition is taken from "condition" or derived
// from the data shape and enhancement kernel when they form a covered pair.
json cmd_enhance(const json& config, const std::string& out_dir,
                 std::optional<std::uint64_t> seed);

// Packaged studies: fig1 (noiseless narrowing sweep), fig2 (noiseless damping
// ladder), fig3 (the same ladder at 5% noise), rates (convergence studies,
// one subdirectory per condition family).
void cmd_experiment(const std::string& name, const std::string& out_dir,
                    std::optional<std::uint64_t> seed);

// Tabulates bounds.csv with rows epsilon,deficit,exponent,bound over the
// config's "epsilons" list for its "condition"; rows whose deficit reaches 1
// or whose epsilon leaves (0, 1/e) are flagged with nan entries and a
// warning, not dropped. "stability_plus_data" (default 1) scales the bound.
void cmd_bound(const json& config, const std::string& out_dir);

// Fits line locations and intensities to the "input" spectrum starting from
// "initial_locations", using a "kernel" or a sampled "shape" CSV; writes
// lines.csv (line,location,intensity) plus report.json and returns the
// report.
json cmd_fit(const json& config, const std::string& out_dir);

} // namespace specenh
