#pragma once

#include <string>
#include <vector>

#include "pcgeur/eur.hpp"
#include "pcgeur/measurement.hpp"
#include "pcgeur/phasespace.hpp"
#include "pcgeur/scheme.hpp"

namespace pcg::io {

/// Deterministic 12-significant-digit text form (infinities spelled "inf").
std::string format_number(double x);

std::string scheme_to_json(const PcgScheme& scheme);
PcgScheme scheme_from_json(const std::string& text);

std::string eur_reports_to_json(const std::vector<EurReport>& reports);
/// CSV with a header row; one row per report.
std::string eur_reports_to_csv(const std::vector<EurReport>& reports);

std::string limit_records_to_csv(const std::vector<LimitRecord>& records);
std::string limit_records_to_json(const std::vector<LimitRecord>& records);

std::string witness_reports_to_csv(const std::vector<WitnessReport>& reports);
std::string witness_reports_to_json(const std::vector<WitnessReport>& reports);

std::string probability_vector_to_csv(const ProbabilityVector& p);
std::string joint_distribution_to_csv(const JointDistribution& joint);

/// Writes <path>.csv with (q, re, im) rows and <path>.json with the header
/// {"N": ..., "dq": ..., "theta": ...}.
void save_wavefunction(const WaveFunction& psi, const std::string& path_stem);
WaveFunction load_wavefunction(const std::string& path_stem);

}  // namespace pcg::io
