#include "entrokit/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "entrokit/deformed_log.hpp"
#include "entrokit/distributions.hpp"
#include "entrokit/divergence.hpp"
#include "entrokit/entropy.hpp"
#include "entrokit/errors.hpp"
#include "entrokit/geometry.hpp"
#include "entrokit/io.hpp"
#include "entrokit/verify.hpp"

namespace entrokit {

namespace {

using json = nlohmann::ordered_json;

struct NumericOptions {
  double k = 0.0;
  double r = 0.0;
  bool relaxed = false;
  bool normalize = false;
  std::string format = "json";

  DeformParams params() const {
    return DeformParams::make(k, r, relaxed ? ParamMode::relaxed : ParamMode::strict);
  }
  io::Format fmt() const { return format == "csv" ? io::Format::csv : io::Format::json; }
};

void add_numeric(CLI::App* sub, NumericOptions& o) {
  sub->add_option("--k", o.k, "deformation parameter k")->required();
  sub->add_option("--r", o.r, "deformation parameter r")->required();
  sub->add_flag("--relaxed", o.relaxed, "accept any finite k != 0 and r");
  sub->add_flag("--normalize", o.normalize, "rescale inputs to unit mass");
  sub->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

/// Flat record as JSON, or as a CSV header line plus one value line. Array
/// fields are spread over name_0, name_1, ... columns.
std::string render(const json& record, io::Format format) {
  if (format == io::Format::json) return record.dump() + "\n";
  std::string head;
  std::string row;
  auto cell = [&](const std::string& name, const json& v) {
    if (!head.empty()) {
      head += ',';
      row += ',';
    }
    head += name;
    if (v.is_number()) {
      row += io::format_real(v.get<double>());
    } else if (v.is_boolean()) {
      row += v.get<bool>() ? "true" : "false";
    } else if (v.is_string()) {
      row += v.get<std::string>();
    } else {
      row += v.dump();
    }
  };
  for (const auto& [key, value] : record.items()) {
    if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i) cell(key + "_" + std::to_string(i), value[i]);
    } else {
      cell(key, value);
    }
  }
  return head + "\n" + row + "\n";
}

std::uint64_t parse_seed(const std::string& text, const char* origin) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(origin) + " is not an unsigned integer: '" + text + "'");
  }
  return v;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("ENTROKIT_SEED");
  return env ? parse_seed(env, "ENTROKIT_SEED") : 0;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto comma = s.find(',', pos);
    const auto item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<std::size_t> parse_dims(const std::string& s) {
  std::vector<std::size_t> dims;
  for (const auto& item : split_list(s)) dims.push_back(parse_seed(item, "--dims entry"));
  return dims;
}

const char* support_name(SupportFlag s) { return s == SupportFlag::full ? "full" : "extended"; }

Conditioning3 parse_mode(const std::string& m) {
  if (m == "xy|z") return Conditioning3::xy_given_z;
  if (m == "y|xz") return Conditioning3::y_given_xz;
  if (m == "x|z") return Conditioning3::x_given_z;
  return Conditioning3::y_given_z;
}

struct Options {
  NumericOptions num;
  std::string input;
  std::string p;
  std::string q;
  std::string direction = "y|x";
  std::string mode = "xy|z";
  std::string convention = "derived";
  std::string target;

  // verify
  std::size_t trials = 100;
  std::optional<std::uint64_t> seed;
  std::string properties;
  std::optional<double> tol;
  std::size_t min_size = 1;
  std::size_t max_size = 16;
  double k_min = 0.01, k_max = 0.5;
  double r_min = 0.05, r_max = 2.0;
  std::size_t threads = 1;
  std::size_t max_failures = 20;
  std::string output;
  bool list = false;

  // sample
  std::string kind = "distribution";
  std::string dims = "4";
  std::string sample_format = "json";
};

int run_verify(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.list) {
    std::string text;
    for (const auto& p : list_properties()) {
      text += p.name + "\t" + (p.kind == PropertyKind::identity ? "identity" : "inequality") +
              "\t" + p.statement + "\n";
    }
    out << text;
    return kExitOk;
  }
  SweepConfig config;
  config.seed = RngSeed{o.seed ? *o.seed : default_seed()};
  config.trials = o.trials;
  config.sizes = {o.min_size, o.max_size};
  config.k_range = {o.k_min, o.k_max};
  config.r_range = {o.r_min, o.r_max};
  config.tol = o.tol;
  config.properties = split_list(o.properties);
  config.threads = o.threads;
  config.max_failures = o.max_failures;

  const auto report = run_suite(config);
  const std::string text = report_to_json(report) + "\n";
  if (!o.output.empty()) {
    std::ofstream f(o.output, std::ios::binary);
    if (!f || !(f << text)) throw ConfigError("cannot write report to " + o.output);
  }
  if (!report.all_passed()) {
    for (const auto& s : report.properties) {
      if (s.fail > 0) err << "violation: " << s.info.name << " failed " << s.fail << " of "
                          << (s.pass + s.fail) << " trials\n";
    }
    if (o.output.empty()) err << text;
    return kExitViolation;
  }
  if (o.output.empty()) out << text;
  return kExitOk;
}

int run_sample(const Options& o, std::ostream& out) {
  const auto dims = parse_dims(o.dims);
  const RngSeed seed{o.seed ? *o.seed : default_seed()};
  const auto fmt = o.sample_format == "csv" ? io::Format::csv : io::Format::json;
  auto need = [&](std::size_t n) {
    if (dims.size() != n) {
      throw ConfigError("--dims needs " + std::to_string(n) + " entries for " + o.kind);
    }
  };
  std::string text;
  if (o.kind == "distribution") {
    need(1);
    text = io::write(sample(DistributionShape{dims[0]}, seed), fmt);
  } else if (o.kind == "joint2") {
    need(2);
    text = io::write(sample(Joint2Shape{dims[0], dims[1]}, seed), fmt);
  } else if (o.kind == "joint3") {
    need(3);
    text = io::write(sample(Joint3Shape{dims[0], dims[1], dims[2]}, seed), fmt);
  } else {
    need(2);
    text = io::write(sample(ChannelShape{dims[0], dims[1]}, seed), fmt);
  }
  out << text;
  return kExitOk;
}

json run_reduce(const Options& o, std::ostream& err) {
  const auto& n = o.num;
  const auto prm = n.params();
  const auto p = io::parse_distribution(io::read_source(o.input), n.normalize);
  const bool divergence_mode = o.target == "kl" || (o.target == "tsallis" && !o.q.empty());
  if (o.target == "tsallis" && n.k != n.r) {
    throw ParamError("tsallis reduction needs k = r");
  }
  json rec;
  double generalized = 0.0;
  double reference = 0.0;
  if (divergence_mode) {
    if (o.q.empty()) throw ConfigError("kl reduction needs --q");
    const auto q = io::parse_distribution(io::read_source(o.q), n.normalize);
    const auto d = divergence(p, q, prm);
    if (d.boundary_degenerate) err << "warning: at k = 1/2 the divergence does not separate distributions\n";
    generalized = d.value;
    if (o.target == "tsallis") {
      const double tq = 1.0 - 2.0 * n.k;
      rec["reference_q"] = tq;
      reference = reference_divergence(p, q, TsallisDivergence{tq});
    } else {
      reference = reference_divergence(p, q, KullbackLeibler{});
    }
  } else {
    if (o.target == "kl") throw ConfigError("kl reduction needs --q");
    generalized = entropy(p, prm).value;
    if (o.target == "tsallis") {
      const double tq = 1.0 + 2.0 * n.k;
      rec["reference_q"] = tq;
      reference = reference_entropy(p, TsallisEntropy{tq});
    } else {
      reference = reference_entropy(p, ShannonEntropy{});
    }
  }
  rec["generalized_value"] = generalized;
  rec["reference_value"] = reference;
  rec["abs_diff"] = std::fabs(generalized - reference);
  return rec;
}

int dispatch(const std::string& command, const Options& o, std::ostream& out, std::ostream& err) {
  if (command == "verify") return run_verify(o, out, err);
  if (command == "sample") return run_sample(o, out);

  const auto& n = o.num;
  const auto prm = n.params();
  json rec;
  if (command == "entropy") {
    const auto p = io::parse_distribution(io::read_source(o.input), n.normalize);
    rec["value"] = entropy(p, prm).value;
  } else if (command == "joint") {
    const auto text = io::read_source(o.input);
    rec["value"] = io::looks_like_joint3(text)
                       ? joint_entropy(io::parse_joint3(text, n.normalize), prm).value
                       : joint_entropy(io::parse_joint2(text, n.normalize), prm).value;
  } else if (command == "conditional") {
    const auto text = io::read_source(o.input);
    if (io::looks_like_joint3(text)) {
      rec["value"] =
          conditional_entropy3(io::parse_joint3(text, n.normalize), prm, parse_mode(o.mode)).value;
    } else {
      const auto dir = o.direction == "x|y" ? Conditioning::x_given_y : Conditioning::y_given_x;
      rec["value"] = conditional_entropy(io::parse_joint2(text, n.normalize), prm, dir).value;
    }
  } else if (command == "mutual") {
    const auto j = io::parse_joint2(io::read_source(o.input), n.normalize);
    rec["value"] = mutual_entropy(j, prm);
    rec["divergence_form"] = mutual_divergence(j, prm).value;
  } else if (command == "divergence") {
    const auto p = io::parse_distribution(io::read_source(o.p), n.normalize);
    const auto q = io::parse_distribution(io::read_source(o.q), n.normalize);
    const auto d = divergence(p, q, prm);
    if (d.boundary_degenerate) {
      err << "warning: at k = 1/2 the divergence is 1 - sum of q over the support of p and does "
             "not separate distributions\n";
    }
    rec["value"] = d.value;
    rec["support"] = support_name(d.support);
  } else if (command == "metric") {
    const auto p = io::parse_distribution(io::read_source(o.input), n.normalize);
    const auto conv = o.convention == "r-shifted" ? MetricConvention::r_shifted : MetricConvention::derived;
    const auto m = fisher_metric(p, prm, conv);
    rec["convention"] = o.convention;
    rec["coefficient"] = metric_coefficient(prm, conv);
    rec["g"] = m.g;
  } else if (command == "reduce") {
    rec = run_reduce(o, err);
  }
  out << render(rec, n.fmt());
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized Tsallis entropy and divergence toolkit", "entrokit"};
  app.require_subcommand(1);
  Options o;

  auto numeric = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    add_numeric(sub, o.num);
    return sub;
  };

  auto* ent = numeric("entropy", "entropy of a distribution {\"p\": [...]}");
  ent->add_option("--input", o.input, "inline JSON or file")->required();

  auto* joint = numeric("joint", "joint entropy of {\"m\": [[...]]} or {\"t\": [[[...]]]}");
  joint->add_option("--input", o.input, "inline JSON or file")->required();

  auto* cond = numeric("conditional", "conditional entropy");
  cond->add_option("--input", o.input, "inline JSON or file")->required();
  cond->add_option("--direction", o.direction, "two-way tables: y|x or x|y")
      ->check(CLI::IsMember({"y|x", "x|y"}))
      ->capture_default_str();
  cond->add_option("--mode", o.mode, "three-way tables: xy|z, y|xz, x|z or y|z")
      ->check(CLI::IsMember({"xy|z", "y|xz", "x|z", "y|z"}))
      ->capture_default_str();

  auto* mut = numeric("mutual", "mutual information S(X) + S(Y) - S(X,Y)");
  mut->add_option("--input", o.input, "inline JSON or file")->required();

  auto* div = numeric("divergence", "relative entropy D(P||Q)");
  div->add_option("--p", o.p, "P as inline JSON or file")->required();
  div->add_option("--q", o.q, "Q as inline JSON or file")->required();

  auto* met = numeric("metric", "diagonal of the induced metric");
  met->add_option("--input", o.input, "inline JSON or file")->required();
  met->add_option("--convention", o.convention, "derived (1-2k) or r-shifted (1-2k+4r)")
      ->check(CLI::IsMember({"derived", "r-shifted"}))
      ->capture_default_str();

  auto* red = numeric("reduce", "compare against Tsallis, Shannon or KL");
  red->add_option("--input", o.input, "P as inline JSON or file")->required();
  red->add_option("--q", o.q, "Q for divergence reductions");
  red->add_option("--target", o.target, "tsallis, shannon or kl")
      ->required()
      ->check(CLI::IsMember({"tsallis", "shannon", "kl"}));

  auto* ver = app.add_subcommand("verify", "randomized property sweep");
  ver->add_option("--trials", o.trials)->capture_default_str();
  ver->add_option("--seed", o.seed, "master seed (default: $ENTROKIT_SEED or 0)");
  ver->add_option("--properties", o.properties, "comma-separated subset");
  ver->add_option("--tol", o.tol, "override both default tolerances");
  ver->add_option("--min-size", o.min_size)->capture_default_str();
  ver->add_option("--max-size", o.max_size)->capture_default_str();
  ver->add_option("--k-min", o.k_min)->capture_default_str();
  ver->add_option("--k-max", o.k_max)->capture_default_str();
  ver->add_option("--r-min", o.r_min)->capture_default_str();
  ver->add_option("--r-max", o.r_max)->capture_default_str();
  ver->add_option("--threads", o.threads)->capture_default_str();
  ver->add_option("--max-failures", o.max_failures)->capture_default_str();
  ver->add_option("--output", o.output, "write the report here instead of stdout");
  ver->add_flag("--list", o.list, "list property names and exit");

  auto* smp = app.add_subcommand("sample", "seeded random distribution, table or channel");
  smp->add_option("--kind", o.kind)
      ->check(CLI::IsMember({"distribution", "joint2", "joint3", "channel"}))
      ->capture_default_str();
  smp->add_option("--dims", o.dims, "comma-separated sizes (channel: outputs,inputs)")
      ->capture_default_str();
  smp->add_option("--seed", o.seed, "seed (default: $ENTROKIT_SEED or 0)");
  smp->add_option("--format", o.sample_format)
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  const auto* chosen = app.get_subcommands().front();
  std::ostringstream buffer;
  try {
    const int code = dispatch(chosen->get_name(), o, buffer, err);
    if (code == kExitOk) out << buffer.str();
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace entrokit
