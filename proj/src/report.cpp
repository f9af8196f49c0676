#include <cmath>
#include <algorithm>
#include <cstdio>

#include "json.hpp"
#include "rqa/corpus.hpp"

namespace rqa {

namespace {

using Json = nlohmann::ordered_json;

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json to_json(const RqaMetrics& m) {
  return Json{{"rec", m.rec},
              {"det", m.det},
              {"maxline", m.maxline},
              {"ent", m.entropy},
              {"trend", m.trend},
              {"recurrent_points", m.recurrent_points},
              {"deterministic_points", m.deterministic_points},
              {"lines", m.line_count}};
}

Json to_json(const MetricSignificance& s) {
  return Json{{"observed", s.observed},
              {"surrogate_mean", s.mean},
              {"surrogate_sd", s.sd},
              {"z", s.z ? Json(*s.z) : Json(nullptr)},
              {"at_or_above", s.at_or_above},
              {"p_empirical", s.p_empirical},
              {"direction", std::string(to_string(s.direction))}};
}

Json to_json(const MetricComparison& c) {
  Json j{{"mean_a", c.mean_a},
         {"sd_a", c.sd_a},
         {"mean_b", c.mean_b},
         {"sd_b", c.sd_b},
         {"welch_t",
          {{"t", number_or_null(c.welch.t)},
           {"df", c.welch.df},
           {"p", c.welch.p},
           {"degenerate", c.welch.degenerate}}}};
  if (c.f) {
    j["f_test"] = {{"f", c.f->f}, {"df_num", c.f->df_num}, {"df_den", c.f->df_den}, {"p", c.f->p}};
  } else {
    j["f_test"] = nullptr;
    j["f_test_error"] = c.f_error;
  }
  return j;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string report_to_json(const CorpusReport& report) {
  Json doc;
  doc["schema_version"] = report.schema_version;
  doc["config"] = {{"alphabet", report.alphabet},
                   {"translit", report.translit.empty() ? Json(nullptr) : Json(report.translit)},
                   {"m", report.embedding.dimension},
                   {"tau", report.embedding.delay},
                   {"lmin", report.embedding.lmin},
                   {"radius", 0},
                   {"trend_exclude_tail", report.metrics.trend_exclude_tail},
                   {"n_surrogates", report.n_surrogates},
                   {"seed", report.seed},
                   {"generator", report.generator}};

  Json records = Json::array();
  for (const auto& r : report.records) {
    Json rec{{"source_id", r.source_id},
             {"path", r.path},
             {"group", r.group},
             {"N", r.letters},
             {"N_e", r.rows},
             {"metrics", to_json(r.metrics)},
             {"surrogates",
              {{"n", r.surrogates.n},
               {"seed", r.surrogates.seed},
               {"generator", r.surrogates.generator},
               {"rec", {{"mean", r.surrogates.rec.mean}, {"sd", r.surrogates.rec.sd}}},
               {"det", {{"mean", r.surrogates.det.mean}, {"sd", r.surrogates.det.sd}}}}},
             {"significance",
              {{"rec", to_json(r.significance.rec)}, {"det", to_json(r.significance.det)}}},
             {"oracle_verified", r.oracle_verified ? Json(*r.oracle_verified) : Json(nullptr)}};
    records.push_back(std::move(rec));
  }
  doc["records"] = std::move(records);

  Json errors = Json::array();
  for (const auto& e : report.errors) {
    errors.push_back({{"path", e.path}, {"source_id", e.source_id}, {"error", e.message}});
  }
  doc["errors"] = std::move(errors);

  if (report.rec_det_correlation) {
    const auto& c = *report.rec_det_correlation;
    doc["rec_det_correlation"] = {{"r", c.r}, {"n", c.n}, {"t", number_or_null(c.t)}, {"p", c.p}};
  } else {
    doc["rec_det_correlation"] = nullptr;
    doc["rec_det_correlation_note"] = report.correlation_note;
  }

  Json comparisons = Json::array();
  for (const auto& g : report.comparisons) {
    comparisons.push_back({{"group_a", g.group_a},
                           {"group_b", g.group_b},
                           {"n_a", g.n_a},
                           {"n_b", g.n_b},
                           {"rec", to_json(g.rec)},
                           {"det", to_json(g.det)}});
  }
  doc["group_comparisons"] = std::move(comparisons);
  doc["warnings"] = report.warnings;
  return doc.dump(2) + "\n";
}

std::string export_rec_det_plane(const CorpusReport& report) {
  std::vector<const TextRecord*> rows;
  for (const auto& r : report.records) rows.push_back(&r);
  std::sort(rows.begin(), rows.end(), [](const TextRecord* a, const TextRecord* b) {
    return a->source_id < b->source_id;
  });

  std::string out = "source_id,group,rec,det,maxline,ent,trend,z_rec,z_det,p_rec,p_det\n";
  const auto z = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; };
  for (const auto* r : rows) {
    out += csv_field(r->source_id) + ',' + csv_field(r->group) + ',' +
           format_double(r->metrics.rec) + ',' + format_double(r->metrics.det) + ',' +
           std::to_string(r->metrics.maxline) + ',' + format_double(r->metrics.entropy) + ',' +
           format_double(r->metrics.trend) + ',' + z(r->significance.rec.z) + ',' +
           z(r->significance.det.z) + ',' + format_double(r->significance.rec.p_empirical) + ',' +
           format_double(r->significance.det.p_empirical) + '\n';
  }
  return out;
}

}  // namespace rqa
