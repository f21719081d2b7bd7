#pragma once

// Serialization: JSON reports, the CSV histogram table, and a static SVG
// bar chart of one fold's histogram. Output is deterministic: keys are
// emitted in numeric order and no locale-dependent formatting is used.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sumset/census.hpp"
#include "sumset/engine.hpp"
#include "sumset/family.hpp"
#include "sumset/verifier.hpp"

namespace sumset {

using Json = nlohmann::ordered_json;

inline Json to_json(const SumVector& x) { return Json(std::vector<int>(x.entries().begin(), x.entries().end())); }

inline Json to_json(const SumsetProfile& p, const SetVector& a) {
  Json collisions = Json::array();
  for (const auto& c : p.collisions) {
    Json reps = Json::array();
    for (const auto& x : c.representations) reps.push_back(to_json(x));
    collisions.push_back(Json{{"total", c.total}, {"representations", reps}});
  }
  return Json{{"set", std::vector<Value>(a.elements().begin(), a.elements().end())},
              {"h", p.h},
              {"size", p.size},
              {"max_size", multiset_count(p.h, a.k())},
              {"deficit", p.deficit},
              {"max_reps", p.max_reps},
              {"collisions", collisions}};
}

inline Json to_json(const BhClassification& c) {
  Json j{{"h_star", c.h_star}, {"capped", c.capped}};
  if (c.first_collision) {
    Json reps = Json::array();
    for (const auto& x : c.first_collision->representations) reps.push_back(to_json(x));
    j["first_collision"] = Json{{"total", c.first_collision->total}, {"representations", reps}};
  } else {
    j["first_collision"] = nullptr;
  }
  return j;
}

inline Json ratio_json(const std::optional<double>& r) {
  if (!r) return "inf";
  // Fixed precision keeps reruns byte-identical across platforms.
  return std::round(*r * 1e6) / 1e6;
}

inline Json to_json(const GapReport& g) {
  Json ratios = Json::array();
  for (const auto& r : g.ratios) ratios.push_back(ratio_json(r));
  return Json{{"ladder", g.ladder},
              {"observed", g.observed},
              {"max_between", g.max_between},
              {"confirmed", g.confirmed},
              {"strongly_confirmed", g.strongly_confirmed},
              {"ratios", ratios},
              {"threshold", g.threshold},
              {"gap_differences", g.gap_differences},
              {"inconclusive", g.inconclusive()}};
}

inline Json to_json(const CensusReport& r) {
  Json hists = Json::object();
  for (const auto& hist : r.histograms) {
    Json counts = Json::object();
    for (auto it = hist.counts.rbegin(); it != hist.counts.rend(); ++it)
      counts[std::to_string(it->first)] = it->second;
    hists[std::to_string(hist.h)] = counts;
  }
  Json bstar = Json::object(), exc = Json::object(), gaps = Json::object();
  for (const auto& [h, n] : r.bstar_counts) bstar[std::to_string(h)] = n;
  for (const auto& [h, n] : r.exceptional_counts) exc[std::to_string(h)] = n;
  for (const auto& [h, g] : r.gaps) gaps[std::to_string(h)] = to_json(g);
  return Json{{"q", r.q},          {"k", r.k},
              {"h_cap", r.h_cap},  {"histograms", hists},
              {"bstar_counts", bstar}, {"exceptional_counts", exc},
              {"capped", r.capped}, {"gaps", gaps}};
}

inline Json to_json(const LemmaVerdict& v, bool with_timing = false) {
  Json j{{"lemma", v.lemma},
         {"q", v.q},
         {"h", v.h},
         {"k", v.k},
         {"instances", v.instances},
         {"pass", v.pass()},
         {"violation_count", v.violation_count},
         {"violations", v.violations}};
  if (with_timing) j["elapsed_ms"] = v.elapsed_ms;
  return j;
}

inline Json to_json(const DotProductRange& d) {
  return Json{{"h", d.h},
              {"q", d.q},
              {"claimed_lo", d.claimed_lo},
              {"claimed_hi", d.claimed_hi},
              {"enumerated", d.enumerated},
              {"min_achievable", d.min_achievable},
              {"max_achievable", d.max_achievable},
              {"achievable_count", d.achievable_count}};
}

inline Json to_json(const PairCensus& c) {
  return Json{{"h", c.h},
              {"k", c.k},
              {"total_disjoint_pairs", c.total_disjoint_pairs},
              {"nontrivial_pairs", c.nontrivial_pairs}};
}

// One JSON line per family member.
inline Json to_json(const MemberVerification& v) {
  return Json{{"a", v.set[0]},
              {"b", v.set[1]},
              {"c", v.set[2]},
              {"d", v.set[3]},
              {"h", v.h},
              {"checks",
               {{"h_star", v.h_star_ok},
                {"deficits", v.deficits_ok},
                {"trivial_only", v.trivial_only},
                {"separation", v.separation_ok}}},
              {"failures", v.failures}};
}

inline Json to_json(const FamilyParams& p) {
  return Json{{"h", p.h},
              {"q", p.q},
              {"a_max", p.a_max},
              {"b_max", p.b_max},
              {"d_min", p.d_min},
              {"d_interval", "inclusive"},
              {"size", family_size(p)}};
}

// Header `h,size,count`; rows by h ascending, then size descending.
inline void write_histogram_csv(std::ostream& out, const CensusReport& r) {
  out << "h,size,count\n";
  for (const auto& hist : r.histograms)
    for (auto it = hist.counts.rbegin(); it != hist.counts.rend(); ++it)
      out << hist.h << ',' << it->first << ',' << it->second << '\n';
}

namespace detail {

inline std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace detail

// Bar chart of |hA| counts for sizes from M_{h,4} - C(h+2,3) up to M_{h,4},
// one bar per size, log-scaled heights, ladder rungs highlighted.
inline std::string render_histogram_svg(const SizeHistogram& hist, const GapReport& gaps) {
  const Count top = multiset_count(hist.h, 4);
  const Count low_deficit = std::min<Count>(tetrahedral(hist.h), top - 1);
  const Count lo = top - low_deficit;
  const int bars = static_cast<int>(top - lo + 1);

  const double bar_w = 14.0, gap = 2.0, margin = 50.0, plot_h = 300.0;
  const double width = margin * 2 + bars * (bar_w + gap);
  const double height = plot_h + margin * 2 + 20;

  Count max_count = 1;
  for (Count s = lo; s <= top; ++s) max_count = std::max(max_count, hist.at(s));
  const double scale = plot_h / std::log10(static_cast<double>(max_count) + 1.0);

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::fmt2(width)
      << "\" height=\"" << detail::fmt2(height) << "\" font-family=\"sans-serif\" font-size=\"9\">\n"
      << "<title>Sizes of " << hist.h << "A over 4-subsets, log scale</title>\n"
      << "<line x1=\"" << margin << "\" y1=\"" << margin + plot_h << "\" x2=\""
      << detail::fmt2(width - margin) << "\" y2=\"" << margin + plot_h
      << "\" stroke=\"black\"/>\n";

  int i = 0;
  for (Count s = lo; s <= top; ++s, ++i) {
    const Count n = hist.at(s);
    const auto rung = std::find(gaps.ladder.begin(), gaps.ladder.end(), s);
    const bool is_rung = rung != gaps.ladder.end();
    const double bh = std::log10(static_cast<double>(n) + 1.0) * scale;
    const double x = margin + i * (bar_w + gap);
    const double y = margin + plot_h - bh;
    svg << "<rect class=\"" << (is_rung ? "rung" : "size") << "\" data-size=\"" << s
        << "\" data-count=\"" << n << "\" x=\"" << detail::fmt2(x) << "\" y=\""
        << detail::fmt2(y) << "\" width=\"" << bar_w << "\" height=\"" << detail::fmt2(bh)
        << "\" fill=\"" << (is_rung ? "#c0392b" : "#7f8c8d") << "\"/>\n";
    svg << "<text x=\"" << detail::fmt2(x + bar_w / 2) << "\" y=\""
        << detail::fmt2(margin + plot_h + 12) << "\" text-anchor=\"middle\">" << s << "</text>\n";
    if (is_rung) {
      const auto l = static_cast<int>(rung - gaps.ladder.begin());
      svg << "<text x=\"" << detail::fmt2(x + bar_w / 2) << "\" y=\"" << detail::fmt2(y - 4)
          << "\" text-anchor=\"middle\">M-" << tetrahedral(l) << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace sumset
