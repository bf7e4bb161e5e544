#include "robin/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "robin/asympt.hpp"
#include "robin/errors.hpp"
#include "robin/halfline.hpp"
#include "robin/report_io.hpp"

namespace robin::cli {
namespace {

using nlohmann::json;
using io::format_number;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string output;
  std::string format = "csv";
  std::string config;
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    entries.emplace_back(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
  }
  return entries;
}

// Fills options absent from the command line with values from the config file.
void apply_config(CLI::App& sub, const std::string& path) {
  for (const auto& [key, value] : read_config(path)) {
    CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config" || key == "help") {
      throw UsageError("unknown config key '" + key + "' in " + path);
    }
    if (opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + format_number(xs[i]);
  return s;
}

json config_json(const std::vector<std::string>& lines) {
  json j = json::object();
  for (const auto& l : lines) {
    const auto eq = l.find(" = ");
    j[l.substr(0, eq)] = l.substr(eq + 3);
  }
  return j;
}

class Emitter {
 public:
  Emitter(const CommonOptions& common, std::ostream& fallback) : common_(common) {
    if (!common.output.empty()) {
      file_.open(common.output, std::ios::binary);
      if (!file_) throw UsageError("cannot open output file '" + common.output + "'");
    }
    out_ = common.output.empty() ? &fallback : &file_;
  }

  void emit(const std::string& command, const std::vector<std::string>& config, const io::Table& table,
            const std::vector<std::string>& trailing_comments = {}, const json& extra = json::object()) {
    if (common_.format == "json") {
      json doc;
      doc["artifact"] = "robin_semiclassics";
      doc["version"] = ROBIN_VERSION;
      doc["command"] = command;
      doc["config"] = config_json(config);
      doc["rows"] = io::rows_json(table);
      for (const auto& [k, v] : extra.items()) doc[k] = v;
      *out_ << doc.dump(2) << "\n";
    } else {
      std::vector<std::string> header{"robin_semiclassics " ROBIN_VERSION, "command = " + command};
      header.insert(header.end(), config.begin(), config.end());
      io::write_csv(*out_, table, header);
      for (const auto& c : trailing_comments) *out_ << "# " << c << "\r\n";
    }
    out_->flush();
    if (!*out_) throw UsageError("write failed for '" + (common_.output.empty() ? "<stdout>" : common_.output) + "'");
  }

 private:
  const CommonOptions& common_;
  std::ofstream file_;
  std::ostream* out_ = nullptr;
};

void add_common(CLI::App& sub, CommonOptions& common) {
  sub.add_option("--output,-o", common.output, "Output file (default: stdout)");
  sub.add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub.add_option("--config", common.config, "File of 'key = value' lines");
}

std::vector<FacetPair> expand_b0(const std::vector<double>& values, int d) {
  const auto n = static_cast<std::size_t>(d);
  if (values.size() == 1) return std::vector<FacetPair>(n, {values[0], values[0]});
  if (values.size() == 2 * n) {
    std::vector<FacetPair> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = {values[2 * i], values[2 * i + 1]};
    return out;
  }
  throw UsageError("--b0 takes 1 value or 2*d values (low,high per axis)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robin-Laplacian spectra, Riesz means and two-term semiclassical asymptotics"};
  app.require_subcommand(1);

  CommonOptions common;

  // coeff
  auto* coeff = app.add_subcommand("coeff", "Coefficient table l1, C_d, l2 over a b grid");
  int coeff_d = 2;
  std::vector<double> coeff_b;
  coeff->add_option("--d", coeff_d, "Dimension (2..8)");
  coeff->add_option("--b", coeff_b, "Robin coefficients (comma separated)")->delimiter(',');
  add_common(*coeff, common);

  // model
  auto* model = app.add_subcommand("model", "Half-line model operator samples");
  int model_d = 2;
  double model_b = 0.0;
  std::vector<double> model_t{0.0};
  model->add_option("--d", model_d, "Dimension entering I_b");
  model->add_option("--b", model_b, "Robin coefficient");
  model->add_option("--t", model_t, "Sample points t >= 0 (comma separated)")->delimiter(',');
  add_common(*model, common);

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "Robin eigenvalues of an interval up to a cutoff");
  double sp_length = 1.0, sp_cl = 0.0, sp_cr = 0.0, sp_cutoff = 100.0;
  spectrum->add_option("--L", sp_length, "Interval length");
  spectrum->add_option("--cl", sp_cl, "Left coefficient: u'(0) = cl u(0)");
  spectrum->add_option("--cr", sp_cr, "Right coefficient: -u'(L) = cr u(L)");
  spectrum->add_option("--Lambda", sp_cutoff, "Spectral cutoff");
  add_common(*spectrum, common);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Riesz means and remainders over an h sweep");
  sweep->set_help_flag("--help", "Print this help message and exit");  // -h would clash with --h
  int sw_d = 2;
  std::vector<double> sw_sides;
  std::string sw_regime = "fixed";
  std::vector<double> sw_b0{0.0};
  double sw_exponent = 0.5;
  std::vector<double> sw_h = default_h_grid();
  double sw_switch = 50.0;
  bool sw_timing = false;
  unsigned sw_threads = 0;
  sweep->add_option("--d", sw_d, "Dimension (2..8)");
  sweep->add_option("--sides", sw_sides, "Side lengths (default 1,sqrt(2) in d=2, else all 1)")->delimiter(',');
  sweep->add_option("--regime", sw_regime, "fixed, small or large")->check(CLI::IsMember({"fixed", "small", "large"}));
  sweep->add_option("--b0", sw_b0, "b0: one value, or low,high per axis")->delimiter(',');
  sweep->add_option("--exponent,--gamma", sw_exponent, "s for theta(h) = h^s, gamma for Theta(h) = h^-gamma");
  sweep->add_option("--h", sw_h, "h values (comma separated)")->delimiter(',');
  sweep->add_option("--large-switch", sw_switch, "Large regime: exact density while |b| <= this");
  sweep->add_flag("--timing", sw_timing, "Record wall time per point (output is then not reproducible)");
  sweep->add_option("--threads", sw_threads, "Worker threads (0: ROBIN_SEMICLASSICS_THREADS or hardware)");
  add_common(*sweep, common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (!common.config.empty()) apply_config(*active, common.config);
    Emitter emitter(common, out);
    const std::string fmt = "format = " + common.format;

    if (active == coeff) {
      for (const auto& r : coeff->get_option("--b")->results()) {
        if (trim(r).empty()) coeff_b.clear();
      }
      if (coeff_b.empty()) throw UsageError("coeff: the --b grid must not be empty");
      const std::vector<std::string> config{"d = " + std::to_string(coeff_d), "b = " + join(coeff_b), fmt};
      const Dimension dim(coeff_d);
      io::Table t;
      t.columns = {"d", "b", "l1_d", "l1_dm1", "c_d", "l2", "abs_err"};
      for (double b : coeff_b) {
        const auto v = l2(dim, b);
        t.add_row({std::to_string(coeff_d), format_number(b), format_number(l1(coeff_d)),
                   format_number(l1(coeff_d - 1)), format_number(c_d(dim)), format_number(v.value),
                   format_number(v.abs_error_estimate)});
      }
      emitter.emit("coeff", config, t);
    } else if (active == model) {
      const Dimension dim(model_d);
      const std::vector<std::string> config{"d = " + std::to_string(model_d), "b = " + format_number(model_b),
                                            "t = " + join(model_t), fmt};
      io::Table t;
      t.columns = {"t", "psi", "psi_bound", "i_b"};
      for (double tt : model_t) {
        t.add_row({format_number(tt), format_number(halfline::psi(model_b, tt)),
                   format_number(halfline::psi_bound(model_b, tt)),
                   format_number(halfline::i_b(dim, model_b, tt).value)});
      }
      emitter.emit("model", config, t);
    } else if (active == spectrum) {
      const spectra1d::RobinInterval iv{sp_length, sp_cl, sp_cr};
      const auto s = spectra1d::enumerate(iv, sp_cutoff);
      const std::vector<std::string> config{"L = " + format_number(sp_length), "cl = " + format_number(sp_cl),
                                            "cr = " + format_number(sp_cr), "Lambda = " + format_number(sp_cutoff),
                                            fmt};
      io::Table t;
      t.columns = {"n", "lambda", "bracket_lo", "bracket_hi"};
      for (std::size_t i = 0; i < s.size(); ++i) {
        t.add_row({std::to_string(i), format_number(s[i]), format_number(s.brackets()[i].first),
                   format_number(s.brackets()[i].second)});
      }
      const auto& c = s.certificate();
      json cert = {{"n_negative", c.n_negative}, {"n_positive", c.n_positive}, {"has_zero", c.has_zero},
                   {"bracket_count", c.bracket_count}, {"neumann_count", c.neumann_count}};
      emitter.emit("spectrum", config, t, {"certificate = " + cert.dump()}, {{"certificate", cert}});
    } else if (active == sweep) {
      const Dimension dim(sw_d);
      if (sw_sides.empty()) {
        sw_sides.assign(static_cast<std::size_t>(sw_d), 1.0);
        if (sw_d == 2) sw_sides[1] = std::sqrt(2.0);
      }
      const auto b0 = expand_b0(sw_b0, sw_d);
      RegimeSpec regime = sw_regime == "fixed"   ? RegimeSpec::fixed(b0)
                          : sw_regime == "small" ? RegimeSpec::small(b0, sw_exponent)
                                                 : RegimeSpec::large(b0, sw_exponent);
      regime.large_switch = sw_switch;
      const BoxDomain box(dim, sw_sides, b0);
      regime.validate(dim);
      if (sw_h.size() < 4) throw UsageError("sweep: need at least 4 h values for the remainder fit");

      std::vector<double> b0_flat;
      for (const auto& f : b0) b0_flat.insert(b0_flat.end(), {f.low, f.high});
      const std::vector<std::string> config{
          "d = " + std::to_string(sw_d), "sides = " + join(sw_sides), "regime = " + sw_regime,
          "b0 = " + join(b0_flat), "exponent = " + format_number(sw_exponent), "h = " + join(sw_h),
          "large-switch = " + format_number(sw_switch), std::string("timing = ") + (sw_timing ? "true" : "false"),
          fmt};
      std::vector<double> seconds;
      const auto reports = run_sweep(box, regime, sw_h, sw_threads, sw_timing ? &seconds : nullptr);
      const auto fit = fit_sweep(reports, regime, dim);
      const auto table = io::sweep_table(reports, regime, dim, seconds);
      const json fj = io::fit_json(fit);
      emitter.emit("sweep", config, table, {"fit = " + fj.dump()}, {{"fit", fj}});
      for (const auto& r : reports) {
        if (!r.kroger_ok) {
          err << "numerical certification failure: lower bound violated at h = " << format_number(r.h) << "\n";
          return kExitNumerical;
        }
      }
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical certification failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace robin::cli
