#include "unimap/report.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

namespace unimap {

namespace {

using nlohmann::ordered_json;

ordered_json interval(const Interval& i) { return ordered_json::array({format_real(i.lo), format_real(i.hi)}); }

ordered_json zero_json(const ZeroInfo& z) {
  ordered_json images = ordered_json::object();
  images["toward"] = z.toward ? ordered_json(to_string(*z.toward)) : ordered_json(nullptr);
  images["away"] = z.away ? ordered_json(to_string(*z.away)) : ordered_json(nullptr);
  return {{"b", format_real(z.b)},
          {"side_of_p", to_string(z.side_of_p)},
          {"local_images", images},
          {"isolated_flag", z.isolated}};
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_json(const UniversalityCertificate& cert) {
  ordered_json j;
  j["p"] = format_real(cert.p);
  j["scales"] = ordered_json::array();
  for (double s : cert.scales) j["scales"].push_back(format_real(s));
  j["witnesses"] = ordered_json::array();
  for (const auto& four : cert.witnesses) {
    ordered_json row = ordered_json::array();
    for (const auto& w : four) {
      row.push_back({{"scale", format_real(w.scale)},
                     {"side", to_string(w.side)},
                     {"x", format_real(w.x)},
                     {"fx_side", to_string(w.fx_side)}});
    }
    j["witnesses"].push_back(row);
  }
  j["a_seq"] = ordered_json::array();
  for (double a : cert.a_seq) j["a_seq"].push_back(format_real(a));
  return j.dump(2);
}

std::string to_json(const CertificationFailure& failure) {
  ordered_json j;
  j["failure"] = {{"scale_index", failure.scale_index},
                  {"scale", format_real(failure.scale)},
                  {"side", to_string(failure.side)},
                  {"missing", to_string(failure.missing)}};
  return j.dump(2);
}

std::string to_json(const NestedIntervalTrace& trace, const std::string& x) {
  ordered_json j;
  j["steps"] = ordered_json::array();
  for (const auto& s : trace.steps) {
    j["steps"].push_back({{"I", interval(s.I)},
                          {"J", interval(s.J)},
                          {"chosen_zero", zero_json(s.chosen_zero)},
                          {"side", to_string(s.side)},
                          {"delta_k", format_real(s.delta)}});
  }
  j["final_interval"] = interval(trace.final_interval);
  j["final_point"] = format_real(trace.final_point);
  j["precision_bits"] = trace.precision;
  if (!x.empty()) j["x"] = x;
  return j.dump(2);
}

}  // namespace unimap
