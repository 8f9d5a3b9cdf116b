#include "oracle/literal_scoring.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <string>

namespace oracle {

namespace {

using Table = std::map<std::string, double>;

const std::map<std::string, Table>& weights() {
  static const std::map<std::string, Table> w = {
      {"AV", {{"N", 0.85}, {"A", 0.62}, {"L", 0.55}, {"P", 0.2}}},
      {"AC", {{"L", 0.77}, {"H", 0.44}}},
      {"UI", {{"N", 0.85}, {"R", 0.62}}},
      {"C", {{"H", 0.56}, {"L", 0.22}, {"N", 0.0}}},
      {"I", {{"H", 0.56}, {"L", 0.22}, {"N", 0.0}}},
      {"A", {{"H", 0.56}, {"L", 0.22}, {"N", 0.0}}},
      {"Y", {{"Z", 1.0}, {"O", 1.1}, {"T", 1.2}, {"M", 1.5}, {"U", 1.0}}},
      {"H", {{"U", 0.0}, {"N", 0.0}, {"E", 0.15}, {"H", 0.35}, {"HU", 0.35}}},
      {"E", {{"X", 1.0}, {"H", 1.0}, {"F", 0.97}, {"P", 0.94}, {"U", 0.91}}},
      {"RL", {{"X", 1.0}, {"U", 1.0}, {"W", 0.97}, {"T", 0.96}, {"O", 0.95}}},
      {"RC", {{"X", 1.0}, {"C", 1.0}, {"R", 0.96}, {"U", 0.92}}},
      {"CR", {{"X", 1.0}, {"H", 1.5}, {"M", 1.0}, {"L", 0.5}}},
      {"IR", {{"X", 1.0}, {"H", 1.5}, {"M", 1.0}, {"L", 0.5}}},
      {"AR", {{"X", 1.0}, {"H", 1.5}, {"M", 1.0}, {"L", 0.5}}},
      {"HR", {{"X", 1.0}, {"H", 1.5}, {"M", 1.0}, {"L", 0.5}}},
      {"MH", {{"U", 0.0}, {"N", 0.0}, {"E", 0.56}, {"H", 0.8}, {"HU", 0.8}}},
  };
  return w;
}

const Table& rvss_network() {
  static const Table t = {{"RN", 0.85}, {"AN", 0.62}, {"IN", 0.4}};
  return t;
}

const Table& rvss_physical() {
  static const Table t = {{"PP", 0.62}, {"PR", 0.4}, {"PI", 0.2}};
  return t;
}

double privileges(const std::string& code, bool changed) {
  if (code == "N") return 0.85;
  if (code == "L") return changed ? 0.68 : 0.62;
  return changed ? 0.50 : 0.27;
}

double attack_vector(const std::string& code, bool rvss) {
  if (!rvss) return weights().at("AV").at(code);
  if (code == "L") return 0.55;
  double w = 1.0;
  for (std::size_t i = 0; i < code.size(); i += 2) {
    const auto token = code.substr(i, 2);
    w *= rvss_network().count(token) ? rvss_network().at(token) : rvss_physical().at(token);
  }
  return w;
}

double impact(double isc, bool changed, bool rvss) {
  if (!changed) return 6.42 * isc;
  double power = isc - 0.02;
  if (rvss && isc > 1.0) power = 0.96;
  double p15 = 1.0;
  for (int i = 0; i < 15; ++i) p15 *= power;
  return 7.52 * (isc - 0.029) - 3.25 * p15;
}

double finish(double impact_value, double exploitability, bool changed) {
  if (impact_value <= 0.0) return 0.0;
  double sum = impact_value + exploitability;
  if (changed) sum = 1.08 * sum;
  if (sum > 10.0) sum = 10.0;
  return roundup_decimal(sum);
}

}  // namespace

double roundup_decimal(double x) {
  char text[64];
  std::snprintf(text, sizeof text, "%.4f", x);
  const std::string s(text);
  const bool negative = s[0] == '-';
  const auto dot = s.find('.');
  const long whole = std::labs(std::stol(s.substr(0, dot)));
  const int tenth = s[dot + 1] - '0';
  const bool rest = s.substr(dot + 2) != "000";
  long tenths = whole * 10 + tenth;
  if (negative) return -static_cast<double>(tenths) / 10.0;
  if (rest) ++tenths;
  return static_cast<double>(tenths) / 10.0;
}

Scores evaluate(const std::string& vector) {
  const bool rvss = vector.rfind("RVSS:", 0) == 0;
  std::map<std::string, std::string> m;
  std::size_t pos = vector.find('/');
  while (pos != std::string::npos) {
    const auto next = vector.find('/', pos + 1);
    const auto seg = vector.substr(pos + 1, next == std::string::npos ? next : next - pos - 1);
    const auto colon = seg.find(':');
    m[seg.substr(0, colon)] = seg.substr(colon + 1);
    pos = next;
  }
  auto get = [&](const std::string& k) { return m.count(k) ? m[k] : std::string("X"); };
  auto w = [&](const std::string& k, const std::string& code) { return weights().at(k).at(code); };

  const bool changed = get("S") == "C";
  double expl = 8.22 * attack_vector(get("AV"), rvss) * w("AC", get("AC")) *
                privileges(get("PR"), changed) * w("UI", get("UI"));
  if (rvss) expl = expl * w("Y", get("Y"));
  double isc = 1.0 - (1.0 - w("C", get("C"))) * (1.0 - w("I", get("I"))) * (1.0 - w("A", get("A")));
  if (rvss) isc = isc + 1.2 * w("H", get("H"));
  const double imp = impact(isc, changed, rvss);

  Scores out;
  out.exploitability = expl;
  out.impact = imp;
  out.base = finish(imp, expl, changed);
  const double t = w("E", get("E")) * w("RL", get("RL")) * w("RC", get("RC"));
  out.temporal = roundup_decimal(out.base * t);

  // Environmental: X takes the base metric's value.
  auto pick = [&](const std::string& mk, const std::string& bk) {
    return get(mk) == "X" ? get(bk) : get(mk);
  };
  const bool mchanged = get("MS") == "X" ? changed : get("MS") == "C";
  double mexpl = 8.22 * attack_vector(pick("MAV", "AV"), rvss) * w("AC", pick("MAC", "AC")) *
                 privileges(pick("MPR", "PR"), mchanged) * w("UI", pick("MUI", "UI"));
  if (rvss) mexpl = mexpl * w("Y", pick("MY", "Y"));
  double prod = (1.0 - w("C", pick("MC", "C")) * w("CR", get("CR"))) *
                (1.0 - w("I", pick("MI", "I")) * w("IR", get("IR"))) *
                (1.0 - w("A", pick("MA", "A")) * w("AR", get("AR")));
  double safety = 0.0;
  if (rvss) {
    const double hr = w("HR", get("HR"));
    if (get("MH") == "X") {
      safety = 1.2 * w("H", get("H")) * hr;
    } else {
      const double mh = w("MH", get("MH"));
      prod = prod * (1.0 - mh * hr);
      safety = 1.2 * mh * hr;
    }
  }
  double misc = 1.0 - prod;
  if (misc > 0.915) misc = 0.915;
  misc = misc + safety;
  const double mimp = impact(misc, mchanged, rvss);
  out.environmental = roundup_decimal(finish(mimp, mexpl, mchanged) * t);
  return out;
}

}  // namespace oracle
