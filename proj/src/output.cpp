#include "casimir/output.hpp"

#include <array>
#include <cstdio>

namespace casimir {

namespace {

constexpr std::array<const char*, 4> channel_names{
    "te_evanescent", "tm_evanescent", "te_propagating", "tm_propagating"};

const ChannelResult& channel_by_index(const PressureBreakdown& b, int i) {
  switch (i) {
    case 0: return b.te_evanescent;
    case 1: return b.tm_evanescent;
    case 2: return b.te_propagating;
    default: return b.tm_propagating;
  }
}

const char* b2s(bool b) { return b ? "true" : "false"; }

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

void write_config_csv(std::ostream& os, const RunConfig& cfg) {
  os << "# command = " << to_string(cfg.command) << "\n";
  for (const auto& [k, v] : config_items(cfg)) os << "# " << k << " = " << v << "\n";
}

void write_config_json(std::ostream& os, const RunConfig& cfg) {
  os << "  \"command\": \"" << to_string(cfg.command) << "\",\n";
  os << "  \"config\": {\n";
  const auto items = config_items(cfg);
  for (size_t i = 0; i < items.size(); ++i)
    os << "    \"" << json_escape(items[i].first) << "\": \""
       << json_escape(items[i].second) << "\""
       << (i + 1 < items.size() ? ",\n" : "\n");
  os << "  },\n";
}

void write_channel_json(std::ostream& os, const PressureBreakdown& b, int i) {
  const ChannelResult& ch = channel_by_index(b, i);
  os << "        \"" << channel_names[i] << "\": {"
     << "\"pressure\": " << format_sci(ch.pressure)
     << ", \"error_estimate\": " << format_sci(ch.error_estimate)
     << ", \"evaluations\": " << ch.evaluations
     << ", \"converged\": " << b2s(ch.converged)
     << ", \"signed_share\": " << format_sci(b.signed_share(ch))
     << ", \"magnitude_share\": " << format_sci(b.magnitude_share(ch)) << "}";
}

void write_range_json(std::ostream& os, const char* key,
                      const ContributionRange& r) {
  os << "      \"" << key << "\": {\"x_lo\": " << format_sci(r.x_lo)
     << ", \"x_hi\": " << format_sci(r.x_hi) << "},\n";
}

}  // namespace

std::string format_sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  return buf;
}

bool all_converged(const std::vector<ForceRow>& rows) {
  for (const auto& r : rows)
    if (!r.breakdown.converged || (r.oracle && !r.oracle->converged))
      return false;
  return true;
}

bool all_converged(const std::vector<SpectrumRow>& rows) {
  for (const auto& r : rows)
    if (!r.table.converged) return false;
  return true;
}

void write_force(std::ostream& os, const RunConfig& cfg,
                 const std::vector<ForceRow>& rows) {
  const bool verify = cfg.verify;
  switch (cfg.format) {
    case OutputFormat::csv: {
      write_config_csv(os, cfg);
      os << "gap,temperature,channel,pressure,error_estimate,evaluations,"
            "converged,signed_share,magnitude_share";
      if (verify) os << ",oracle_pressure,oracle_error,oracle_rel_diff";
      os << "\n";
      for (const auto& row : rows) {
        const auto& b = row.breakdown;
        for (int i = 0; i < 4; ++i) {
          const ChannelResult& ch = channel_by_index(b, i);
          os << format_sci(row.gap) << ',' << format_sci(cfg.temperature)
             << ',' << channel_names[i] << ',' << format_sci(ch.pressure)
             << ',' << format_sci(ch.error_estimate) << ',' << ch.evaluations
             << ',' << b2s(ch.converged) << ','
             << format_sci(b.signed_share(ch)) << ','
             << format_sci(b.magnitude_share(ch));
          if (verify) os << ",,,";
          os << "\n";
        }
        os << format_sci(row.gap) << ',' << format_sci(cfg.temperature)
           << ",total," << format_sci(b.total) << ','
           << format_sci(b.total_error) << ',' << 0 << ','
           << b2s(b.converged) << ",,";
        if (verify && row.oracle)
          os << ',' << format_sci(row.oracle->pressure) << ','
             << format_sci(row.oracle->error_estimate) << ','
             << format_sci(row.oracle_rel_diff);
        else if (verify)
          os << ",,,";
        os << "\n";
      }
      break;
    }
    case OutputFormat::json: {
      os << "{\n";
      write_config_json(os, cfg);
      os << "  \"results\": [\n";
      for (size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const auto& b = row.breakdown;
        os << "    {\n";
        os << "      \"gap\": " << format_sci(row.gap) << ",\n";
        os << "      \"temperature\": " << format_sci(cfg.temperature) << ",\n";
        os << "      \"channels\": {\n";
        for (int i = 0; i < 4; ++i) {
          write_channel_json(os, b, i);
          os << (i < 3 ? ",\n" : "\n");
        }
        os << "      },\n";
        os << "      \"total\": " << format_sci(b.total) << ",\n";
        os << "      \"total_error\": " << format_sci(b.total_error) << ",\n";
        os << "      \"converged\": " << b2s(b.converged);
        if (row.oracle) {
          const auto& o = *row.oracle;
          os << ",\n      \"oracle\": {\"pressure\": " << format_sci(o.pressure)
             << ", \"error_estimate\": " << format_sci(o.error_estimate)
             << ", \"terms\": " << o.terms
             << ", \"evaluations\": " << o.evaluations
             << ", \"converged\": " << b2s(o.converged)
             << ", \"rel_diff\": " << format_sci(row.oracle_rel_diff) << "}";
        }
        os << "\n    }" << (r + 1 < rows.size() ? ",\n" : "\n");
      }
      os << "  ]\n}\n";
      break;
    }
    case OutputFormat::pretty: {
      os << "thermal correction to the Casimir pressure, F(l,T) - F(l,0)\n";
      for (const auto& [k, v] : config_items(cfg))
        os << "  " << k << " = " << v << "\n";
      for (const auto& row : rows) {
        const auto& b = row.breakdown;
        os << "gap " << format_sci(row.gap) << " m, T "
           << format_sci(cfg.temperature) << " K\n";
        static constexpr std::array<const char*, 4> labels{
            "TE evanescent ", "TM evanescent ", "TE propagating",
            "TM propagating"};
        for (int i = 0; i < 4; ++i) {
          const ChannelResult& ch = channel_by_index(b, i);
          os << "  " << labels[i] << "  " << format_sci(ch.pressure)
             << " Pa  +- " << format_sci(ch.error_estimate)
             << "  share " << format_sci(b.signed_share(ch)) << "  |share| "
             << format_sci(b.magnitude_share(ch))
             << (ch.converged ? "" : "  NOT CONVERGED") << "\n";
        }
        os << "  total           " << format_sci(b.total) << " Pa  +- "
           << format_sci(b.total_error)
           << (b.converged ? "  converged" : "  NOT CONVERGED") << "\n";
        if (row.oracle) {
          const auto& o = *row.oracle;
          os << "  oracle          " << format_sci(o.pressure)
             << " Pa  +- " << format_sci(o.error_estimate) << "  rel diff "
             << format_sci(row.oracle_rel_diff) << "  terms " << o.terms
             << (o.converged ? "  converged" : "  NOT CONVERGED") << "\n";
        }
      }
      break;
    }
  }
}

void write_spectrum(std::ostream& os, const RunConfig& cfg,
                    const std::vector<SpectrumRow>& rows) {
  switch (cfg.format) {
    case OutputFormat::csv: {
      write_config_csv(os, cfg);
      for (const auto& row : rows) {
        os << "# separation = " << format_sci(row.gap) << "\n";
        os << "# variable = " << to_string(row.table.variable) << "\n";
        os << "# fraction = " << format_sci(row.range.fraction) << "\n";
        os << "# x_lo = " << format_sci(row.range.x_lo) << "\n";
        os << "# x_hi = " << format_sci(row.range.x_hi) << "\n";
        os << "# x_lo_min_width = " << format_sci(row.min_width.x_lo) << "\n";
        os << "# x_hi_min_width = " << format_sci(row.min_width.x_hi) << "\n";
        os << "# x_lo_min_width_log = " << format_sci(row.min_width_log.x_lo)
           << "\n";
        os << "# x_hi_min_width_log = " << format_sci(row.min_width_log.x_hi)
           << "\n";
        os << "# normalization = " << format_sci(row.table.normalization)
           << "\n";
        os << "# converged = " << b2s(row.table.converged) << "\n";
        os << "# evaluations = " << row.table.evaluations << "\n";
        os << "x,density,cumulative\n";
        for (const auto& s : row.table.samples)
          os << format_sci(s.x) << ',' << format_sci(s.density) << ','
             << format_sci(s.cumulative) << "\n";
      }
      break;
    }
    case OutputFormat::json: {
      os << "{\n";
      write_config_json(os, cfg);
      os << "  \"results\": [\n";
      for (size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        os << "    {\n";
        os << "      \"gap\": " << format_sci(row.gap) << ",\n";
        os << "      \"temperature\": " << format_sci(cfg.temperature) << ",\n";
        os << "      \"variable\": \"" << to_string(row.table.variable)
           << "\",\n";
        os << "      \"fraction\": " << format_sci(row.range.fraction) << ",\n";
        write_range_json(os, "range", row.range);
        write_range_json(os, "min_width_range", row.min_width);
        write_range_json(os, "min_width_log_range", row.min_width_log);
        os << "      \"normalization\": " << format_sci(row.table.normalization)
           << ",\n";
        os << "      \"converged\": " << b2s(row.table.converged) << ",\n";
        os << "      \"evaluations\": " << row.table.evaluations << ",\n";
        os << "      \"samples\": [\n";
        for (size_t i = 0; i < row.table.samples.size(); ++i) {
          const auto& s = row.table.samples[i];
          os << "        [" << format_sci(s.x) << ", " << format_sci(s.density)
             << ", " << format_sci(s.cumulative) << "]"
             << (i + 1 < row.table.samples.size() ? ",\n" : "\n");
        }
        os << "      ]\n";
        os << "    }" << (r + 1 < rows.size() ? ",\n" : "\n");
      }
      os << "  ]\n}\n";
      break;
    }
    case OutputFormat::pretty: {
      os << "TE-evanescent thermal-correction spectrum\n";
      for (const auto& [k, v] : config_items(cfg))
        os << "  " << k << " = " << v << "\n";
      for (const auto& row : rows) {
        os << "gap " << format_sci(row.gap) << " m, variable "
           << to_string(row.table.variable) << "\n";
        os << "  " << format_sci(row.range.fraction)
           << " range (equal-tail quantiles): [" << format_sci(row.range.x_lo)
           << ", " << format_sci(row.range.x_hi) << "]\n";
        os << "  same fraction, narrowest interval: ["
           << format_sci(row.min_width.x_lo) << ", "
           << format_sci(row.min_width.x_hi) << "]  (log metric: ["
           << format_sci(row.min_width_log.x_lo) << ", "
           << format_sci(row.min_width_log.x_hi) << "])\n";
        os << "  normalization " << format_sci(row.table.normalization)
           << ", samples " << row.table.samples.size()
           << (row.table.converged ? ", converged" : ", NOT CONVERGED") << "\n";
        os << "  x  density  cumulative\n";
        for (const auto& s : row.table.samples)
          os << "  " << format_sci(s.x) << "  " << format_sci(s.density)
             << "  " << format_sci(s.cumulative) << "\n";
      }
      break;
    }
  }
}

void write_applicability(std::ostream& os, const RunConfig& cfg,
                         const std::vector<ApplicabilityRow>& rows) {
  switch (cfg.format) {
    case OutputFormat::csv: {
      write_config_csv(os, cfg);
      os << "gap,lambda_max,spot_exact,spot_approx,criterion_spot,"
            "threshold_separation,ref_wavelength_estimate,criterion_ref\n";
      for (const auto& row : rows) {
        const auto& a = row.report;
        os << format_sci(a.l) << ',' << format_sci(a.lambda_max) << ','
           << format_sci(a.spot.exact) << ',' << format_sci(a.spot.approx)
           << ',' << b2s(a.criterion_spot) << ','
           << format_sci(a.threshold_separation) << ','
           << format_sci(a.ref_wavelength_estimate) << ','
           << b2s(a.criterion_ref) << "\n";
      }
      break;
    }
    case OutputFormat::json: {
      os << "{\n";
      write_config_json(os, cfg);
      os << "  \"results\": [\n";
      for (size_t r = 0; r < rows.size(); ++r) {
        const auto& a = rows[r].report;
        os << "    {\"gap\": " << format_sci(a.l)
           << ", \"lambda_max\": " << format_sci(a.lambda_max)
           << ", \"spot_exact\": " << format_sci(a.spot.exact)
           << ", \"spot_approx\": " << format_sci(a.spot.approx)
           << ", \"criterion_spot\": " << b2s(a.criterion_spot)
           << ", \"threshold_separation\": "
           << format_sci(a.threshold_separation)
           << ", \"ref_wavelength_estimate\": "
           << format_sci(a.ref_wavelength_estimate)
           << ", \"criterion_ref\": " << b2s(a.criterion_ref) << "}"
           << (r + 1 < rows.size() ? ",\n" : "\n");
      }
      os << "  ]\n}\n";
      break;
    }
    case OutputFormat::pretty: {
      os << "size-vs-wavelength applicability report\n";
      for (const auto& [k, v] : config_items(cfg))
        os << "  " << k << " = " << v << "\n";
      if (!rows.empty()) {
        os << "threshold separation 2R/pi^2 = "
           << format_sci(rows.front().report.threshold_separation) << " m\n";
        os << "field-period wavelength estimate 2 pi c / nu = "
           << format_sci(rows.front().report.ref_wavelength_estimate)
           << " m\n";
      }
      for (const auto& row : rows) {
        const auto& a = row.report;
        os << "gap " << format_sci(a.l) << " m: longest contributing wavelength "
           << format_sci(a.lambda_max) << " m, interaction spot "
           << format_sci(a.spot.exact) << " m (approx "
           << format_sci(a.spot.approx) << " m)\n";
        os << "  wavelength < spot: " << (a.criterion_spot ? "yes" : "NO")
           << " -> plate size "
           << (a.criterion_spot ? "supports" : "does not support")
           << " the infinite-plate treatment\n";
        os << "  period-based estimate < spot: "
           << (a.criterion_ref ? "yes" : "NO")
           << " -> that estimate would "
           << (a.criterion_ref ? "also allow it" : "wrongly forbid it") << "\n";
      }
      break;
    }
  }
}

}  // namespace casimir
