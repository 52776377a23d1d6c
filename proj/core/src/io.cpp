#include "pcgeur/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace pcg::io {

using nlohmann::json;

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string scheme_to_json(const PcgScheme& scheme) {
  json j;
  j["d"] = scheme.outcomes();
  j["M"] = scheme.m;
  j["theta"] = scheme.theta;
  j["theta_prime"] = scheme.theta_prime;
  j["T_theta"] = scheme.bins_theta.period;
  j["T_theta_prime"] = scheme.bins_theta_prime.period;
  j["offset_theta"] = scheme.bins_theta.offset;
  j["offset_theta_prime"] = scheme.bins_theta_prime.offset;
  return j.dump(2);
}

PcgScheme scheme_from_json(const std::string& text) {
  const json j = json::parse(text);
  PcgScheme scheme;
  scheme.theta = j.at("theta").get<double>();
  scheme.theta_prime = j.at("theta_prime").get<double>();
  scheme.m = j.at("M").get<int>();
  const int d = j.at("d").get<int>();
  scheme.bins_theta = BinSpec(j.at("T_theta").get<double>(), d,
                              j.value("offset_theta", 0.0));
  scheme.bins_theta_prime = BinSpec(j.at("T_theta_prime").get<double>(), d,
                                    j.value("offset_theta_prime", 0.0));
  return scheme;
}

namespace {

json report_to_json(const EurReport& r) {
  json j;
  j["scheme_id"] = r.scheme_id;
  j["state_id"] = r.state_id;
  j["alpha"] = std::isinf(r.alpha) ? json("inf") : json(r.alpha);
  j["beta"] = std::isinf(r.beta) ? json("inf") : json(r.beta);
  j["H_alpha"] = r.h_alpha;
  j["H_beta"] = r.h_beta;
  j["sum"] = r.sum;
  j["bound"] = r.bound;
  j["deficit"] = r.deficit;
  return j;
}

}  // namespace

std::string eur_reports_to_json(const std::vector<EurReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  return arr.dump(2);
}

std::string eur_reports_to_csv(const std::vector<EurReport>& reports) {
  std::ostringstream out;
  out << "scheme_id,state_id,alpha,beta,H_alpha,H_beta,sum,bound,deficit\n";
  for (const auto& r : reports) {
    out << r.scheme_id << ',' << r.state_id << ',' << format_number(r.alpha)
        << ',' << format_number(r.beta) << ',' << format_number(r.h_alpha)
        << ',' << format_number(r.h_beta) << ',' << format_number(r.sum)
        << ',' << format_number(r.bound) << ',' << format_number(r.deficit)
        << '\n';
  }
  return out.str();
}

std::string limit_records_to_csv(const std::vector<LimitRecord>& records) {
  std::ostringstream out;
  out << "d,T_theta,s_theta,s_theta_prime,H_alpha,H_beta,rescaled_sum,"
         "discrete_bound,continuous_sum,gap_theta\n";
  for (const auto& r : records) {
    out << r.d << ',' << format_number(r.period_theta) << ','
        << format_number(r.bin_width_theta) << ','
        << format_number(r.bin_width_theta_prime) << ','
        << format_number(r.h_alpha) << ',' << format_number(r.h_beta) << ','
        << format_number(r.rescaled_sum) << ','
        << format_number(r.discrete_bound) << ','
        << format_number(r.continuous_sum) << ','
        << format_number(r.gap_theta) << '\n';
  }
  return out.str();
}

std::string limit_records_to_json(const std::vector<LimitRecord>& records) {
  json arr = json::array();
  for (const auto& r : records) {
    json j;
    j["d"] = r.d;
    j["T_theta"] = r.period_theta;
    j["s_theta"] = r.bin_width_theta;
    j["s_theta_prime"] = r.bin_width_theta_prime;
    j["H_alpha"] = r.h_alpha;
    j["H_beta"] = r.h_beta;
    j["rescaled_sum"] = r.rescaled_sum;
    j["discrete_bound"] = r.discrete_bound;
    j["continuous_sum"] = r.continuous_sum;
    j["gap_theta"] = r.gap_theta;
    arr.push_back(j);
  }
  return arr.dump(2);
}

std::string witness_reports_to_csv(const std::vector<WitnessReport>& reports) {
  std::ostringstream out;
  out << "theta,theta_prime,phi,phi_prime,H_cond_1,H_cond_2,sum,bound,"
         "violated\n";
  for (const auto& r : reports) {
    out << format_number(r.theta) << ',' << format_number(r.theta_prime)
        << ',' << format_number(r.phi) << ',' << format_number(r.phi_prime)
        << ',' << format_number(r.h_cond_1) << ','
        << format_number(r.h_cond_2) << ',' << format_number(r.sum) << ','
        << format_number(r.bound) << ',' << (r.violated ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string witness_reports_to_json(const std::vector<WitnessReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) {
    json j;
    j["theta"] = r.theta;
    j["theta_prime"] = r.theta_prime;
    j["phi"] = r.phi;
    j["phi_prime"] = r.phi_prime;
    j["H_cond_1"] = r.h_cond_1;
    j["H_cond_2"] = r.h_cond_2;
    j["sum"] = r.sum;
    j["bound"] = r.bound;
    j["violated"] = r.violated;
    arr.push_back(j);
  }
  return arr.dump(2);
}

std::string probability_vector_to_csv(const ProbabilityVector& p) {
  std::ostringstream out;
  out << "k,p\n";
  for (int k = 0; k < p.size(); ++k) {
    out << k << ',' << format_number(p[k]) << '\n';
  }
  return out.str();
}

std::string joint_distribution_to_csv(const JointDistribution& joint) {
  std::ostringstream out;
  out << "k,l,p\n";
  for (int k = 0; k < joint.rows; ++k) {
    for (int l = 0; l < joint.cols; ++l) {
      out << k << ',' << l << ',' << format_number(joint.at(k, l)) << '\n';
    }
  }
  return out.str();
}

void save_wavefunction(const WaveFunction& psi, const std::string& path_stem) {
  {
    std::ofstream csv(path_stem + ".csv");
    if (!csv) throw std::runtime_error("cannot write " + path_stem + ".csv");
    csv << "q,re,im\n";
    for (int j = 0; j < psi.grid.n; ++j) {
      csv << format_number(psi.grid.point(j)) << ','
          << format_number(psi.amp[j].real()) << ','
          << format_number(psi.amp[j].imag()) << '\n';
    }
  }
  json header;
  header["N"] = psi.grid.n;
  header["dq"] = psi.grid.dq;
  header["theta"] = psi.theta;
  std::ofstream meta(path_stem + ".json");
  if (!meta) throw std::runtime_error("cannot write " + path_stem + ".json");
  meta << header.dump(2) << '\n';
}

WaveFunction load_wavefunction(const std::string& path_stem) {
  std::ifstream meta(path_stem + ".json");
  if (!meta) throw std::runtime_error("cannot read " + path_stem + ".json");
  json header;
  meta >> header;
  WaveFunction psi;
  psi.grid = Grid(header.at("N").get<int>(), header.at("dq").get<double>());
  psi.theta = header.at("theta").get<double>();
  psi.amp.resize(psi.grid.n);

  std::ifstream csv(path_stem + ".csv");
  if (!csv) throw std::runtime_error("cannot read " + path_stem + ".csv");
  std::string line;
  std::getline(csv, line);  // header
  for (int j = 0; j < psi.grid.n; ++j) {
    if (!std::getline(csv, line)) {
      throw std::runtime_error("wavefunction CSV truncated");
    }
    double q, re, im;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &q, &re, &im) != 3) {
      throw std::runtime_error("bad wavefunction CSV row: " + line);
    }
    psi.amp[j] = {re, im};
  }
  return psi;
}

}  // namespace pcg::io
