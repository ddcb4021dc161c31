// Copyright 2026 The cwcmark Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cwcmark/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "cwcmark/attacks.hpp"
#include "cwcmark/codec.hpp"
#include "cwcmark/errors.hpp"
#include "cwcmark/experiment.hpp"
#include "cwcmark/gaussian.hpp"
#include "cwcmark/hex.hpp"
#include "cwcmark/model_io.hpp"
#include "cwcmark/watermark.hpp"

namespace cwcmark {
namespace {

using nlohmann::json;

struct PublishedRow {
  std::uint64_t k;
  std::uint64_t alpha;
  std::uint64_t length;
};

// Code-size examples as commonly published for this construction.
constexpr PublishedRow kPublishedTable[] = {
    {64, 8, 972},      {64, 9, 583},      {64, 10, 393},     {64, 11, 288},
    {128, 16, 1757},   {128, 18, 1063},   {128, 20, 722},    {128, 22, 533},
    {254, 32, 3307},   {254, 36, 2011},   {254, 40, 1373},   {254, 43, 1090},
    {512, 63, 6858},   {512, 73, 3693},   {512, 79, 2780},   {512, 85, 2196},
    {1024, 127, 12955}, {1024, 145, 7443}, {1024, 159, 5350}, {1024, 170, 4323},
};

struct Global {
  std::uint64_t seed = 0;
  bool quiet = false;
  bool json = false;
};

class VerificationFailure : public Error {
 public:
  using Error::Error;
};

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

SizingRule parse_rule(const std::string& name) {
  return name == "product" ? SizingRule::kProductBound : SizingRule::kMinimal;
}

json report_json(const ParamReport& r) {
  return json{{"k", r.params.k},
              {"alpha", r.params.alpha},
              {"L", r.params.length},
              {"capacity_bits", r.capacity_bits},
              {"tolerance", fixed4(r.tolerance)},
              {"upper_bound_holds", r.upper_bound_holds}};
}

void print_report(std::ostream& out, const ParamReport& r) {
  out << "k=" << r.params.k << " alpha=" << r.params.alpha << " L=" << r.params.length
      << " capacity_bits=" << r.capacity_bits << " tolerance=" << fixed4(r.tolerance)
      << " upper_bound=" << (r.upper_bound_holds ? "holds" : "exceeded") << '\n';
}

// Emits either the json object or the text produced by `text`.
void emit(const Global& g, std::ostream& out, const json& j,
          const std::function<void(std::ostream&)>& text) {
  if (g.quiet) return;
  if (g.json) {
    out << j.dump() << '\n';
  } else {
    text(out);
  }
}

CodeParams resolve_params(std::uint64_t k, std::uint64_t alpha,
                          std::optional<std::uint64_t> length, const std::string& rule) {
  if (length) {
    CodeParams params{k, alpha, *length};
    params.validate();
    return params;
  }
  return find_params(k, alpha, parse_rule(rule)).params;
}

// ---- params -----------------------------------------------------------------

struct ParamsOptions {
  std::optional<std::uint64_t> k;
  std::optional<std::uint64_t> alpha;
  std::optional<std::uint64_t> length;
  std::optional<double> tolerance;
  std::string rule = "minimal";
  bool table = false;
};

int cmd_params(const ParamsOptions& o, const Global& g, std::ostream& out) {
  if (o.table) {
    json rows = json::array();
    std::ostringstream text;
    text << "k     alpha  L(minimal)  L(product)  L(published)  tolerance(published L)\n";
    for (const auto& row : kPublishedTable) {
      const auto minimal = find_params(row.k, row.alpha, SizingRule::kMinimal);
      const auto product = find_params(row.k, row.alpha, SizingRule::kProductBound);
      const double tol = pruning_tolerance(CodeParams{row.k, row.alpha, row.length});
      char line[128];
      std::snprintf(line, sizeof(line), "%-5llu %-6llu %-11llu %-11llu %-13llu %s\n",
                    static_cast<unsigned long long>(row.k),
                    static_cast<unsigned long long>(row.alpha),
                    static_cast<unsigned long long>(minimal.params.length),
                    static_cast<unsigned long long>(product.params.length),
                    static_cast<unsigned long long>(row.length), fixed4(tol).c_str());
      text << line;
      rows.push_back(json{{"k", row.k},
                          {"alpha", row.alpha},
                          {"L_minimal", minimal.params.length},
                          {"L_product", product.params.length},
                          {"L_published", row.length},
                          {"tolerance_published", fixed4(tol)}});
    }
    emit(g, out, rows, [&](std::ostream& os) { os << text.str(); });
    return kExitOk;
  }
  if (!o.k) throw CLI::ValidationError("params", "-k is required unless --reference-table is given");
  if (o.alpha && *o.alpha == 0) throw CLI::ValidationError("--alpha", "alpha must be at least 1");
  if (!o.alpha && !o.tolerance) {
    throw CLI::ValidationError("params", "give either --alpha or --tolerance");
  }

  ParamReport report;
  if (o.alpha) {
    report = o.length ? describe_params(CodeParams{*o.k, *o.alpha, *o.length})
                      : find_params(*o.k, *o.alpha, parse_rule(o.rule));
  } else {
    const auto found = find_params_for_tolerance(*o.k, *o.tolerance, parse_rule(o.rule));
    if (!found) throw DomainError("no code reaches tolerance " + format_double(*o.tolerance));
    report = *found;
  }
  emit(g, out, report_json(report), [&](std::ostream& os) { print_report(os, report); });
  return kExitOk;
}

// ---- encode / decode ----------------------------------------------------------

struct EncodeOptions {
  std::string message;
  std::optional<std::uint64_t> k;
  std::uint64_t alpha = 10;
  std::optional<std::uint64_t> length;
  std::string rule = "minimal";
};

int cmd_encode(const EncodeOptions& o, const Global& g, std::ostream& out) {
  WatermarkMessage message = message_from_hex(o.message);
  if (o.k) {
    const BigUint value = bits_to_int(message);
    message = int_to_bits(value, *o.k);
  }
  const CodeParams params = resolve_params(message.size(), o.alpha, o.length, o.rule);
  const Codeword codeword = ConstantWeightCoder(params).encode(message);
  const std::string text = codeword_to_string(codeword);
  emit(g, out,
       json{{"k", params.k}, {"alpha", params.alpha}, {"L", params.length}, {"codeword", text}},
       [&](std::ostream& os) { os << text << '\n'; });
  return kExitOk;
}

struct DecodeOptions {
  std::string codeword;
  std::uint64_t k = 0;
  std::uint64_t alpha = 0;
};

int cmd_decode(const DecodeOptions& o, const Global& g, std::ostream& out) {
  const Codeword codeword = codeword_from_string(o.codeword);
  const CodeParams params{o.k, o.alpha, codeword.size()};
  params.validate();
  const WatermarkMessage message = ConstantWeightCoder(params).decode(codeword);
  const std::string hex = message_to_hex(message);
  emit(g, out, json{{"k", params.k}, {"message", hex}},
       [&](std::ostream& os) { os << hex << '\n'; });
  return kExitOk;
}

// ---- generate -----------------------------------------------------------------

struct GenerateOptions {
  std::uint64_t n = 1'000'000;
  double sigma = 0.01;
  std::string out;
};

int cmd_generate(const GenerateOptions& o, const Global& g, std::ostream& out) {
  const WeightVector weights = sample_gaussian_weights(o.n, o.sigma, g.seed);
  write_weights(o.out, weights);
  emit(g, out, json{{"n", o.n}, {"sigma", o.sigma}, {"seed", g.seed}},
       [&](std::ostream& os) { os << "wrote " << o.n << " weights to " << o.out << '\n'; });
  return kExitOk;
}

// ---- embed / extract ------------------------------------------------------------

struct EmbedOptions {
  std::string in;
  std::string out;
  std::string spec;
  std::string message;
  std::uint64_t key = 0;
  std::uint64_t alpha = 10;
  std::optional<std::uint64_t> length;
  std::string rule = "minimal";
  std::optional<double> rate;
  bool two_sided = false;
  double t0_ratio = 0.5;
  std::optional<double> t0;
  std::optional<double> t1;
  std::optional<std::uint64_t> block_bits;
  bool force = false;
};

int cmd_embed(const EmbedOptions& o, const Global& g, std::ostream& out) {
  if (o.rate && (o.t0 || o.t1)) {
    throw CLI::ValidationError("embed", "--rate cannot be combined with --t0/--t1");
  }
  if (!o.rate && !(o.t0 && o.t1)) {
    throw CLI::ValidationError("embed", "give --rate, or both --t0 and --t1");
  }
  const WeightVector host = read_weights(o.in);
  const double sigma = estimate_sigma(host);
  ThresholdPair thresholds;
  if (o.rate) {
    thresholds = design_thresholds(sigma, *o.rate,
                                   o.two_sided ? TailMass::kTwoSided : TailMass::kOneSided,
                                   o.t0_ratio);
  } else {
    thresholds = ThresholdPair{*o.t0, *o.t1};
    thresholds.validate();
  }
  const std::vector<std::uint8_t> bits = bits_from_hex(o.message);
  const RatioPolicy policy = o.force ? RatioPolicy::kOverride : RatioPolicy::kEnforce;

  SpecDocument doc;
  doc.key = o.key;
  doc.thresholds = thresholds;
  doc.sigma = sigma;
  doc.design_rate = o.rate;
  doc.n = host.size();
  doc.message_bits = bits.size();

  std::optional<WeightVector> marked;
  std::uint64_t modified = 0;
  double max_perturbation = 0.0;
  if (o.block_bits) {
    doc.layout = SpecDocument::Layout::kBlocks;
    doc.params = resolve_params(*o.block_bits, o.alpha, o.length, o.rule);
    auto [weights, receipt] = embed_blocks(host, bits, o.key, thresholds, doc.params, policy);
    for (const auto& b : receipt.blocks) doc.positions.push_back(b.spec.positions);
    modified = receipt.modified_count();
    max_perturbation = receipt.max_perturbation();
    marked.emplace(std::move(weights));
  } else {
    doc.layout = SpecDocument::Layout::kSingle;
    doc.params = resolve_params(bits.size(), o.alpha, o.length, o.rule);
    auto [weights, receipt] =
        embed_message(host, WatermarkMessage{bits}, o.key, thresholds, doc.params, policy);
    doc.positions.push_back(receipt.spec.positions);
    modified = receipt.modified_count;
    max_perturbation = receipt.max_perturbation;
    marked.emplace(std::move(weights));
  }
  write_weights(o.out, *marked);
  write_spec(o.spec, doc);

  emit(g, out,
       json{{"k", doc.params.k},
            {"alpha", doc.params.alpha},
            {"L", doc.params.length},
            {"blocks", doc.block_count()},
            {"t0", thresholds.t0},
            {"t1", thresholds.t1},
            {"sigma", sigma},
            {"modified_count", modified},
            {"max_perturbation", max_perturbation}},
       [&](std::ostream& os) {
         os << "embedded " << doc.message_bits << " bits in " << doc.block_count()
            << " block(s): k=" << doc.params.k << " alpha=" << doc.params.alpha
            << " L=" << doc.params.length << '\n'
            << "T0=" << format_double(thresholds.t0) << " T1=" << format_double(thresholds.t1)
            << " sigma=" << format_double(sigma) << '\n'
            << "modified_count=" << modified
            << " max_perturbation=" << format_double(max_perturbation) << '\n';
       });
  return kExitOk;
}

struct ExtractOptions {
  std::string in;
  std::string spec;
};

int cmd_extract(const ExtractOptions& o, const Global& g, std::ostream& out) {
  const WeightVector weights = read_weights(o.in);
  const SpecDocument doc = read_spec(o.spec);
  std::vector<WatermarkMessage> blocks;
  bool range_ok = true;
  // Smallest gap between the weakest one and the strongest zero over all
  // blocks; <= 0 means the word was picked by tie-breaking, not by the weights.
  double margin = std::numeric_limits<double>::infinity();
  for (const EmbedSpec& spec : doc.blocks()) {
    const Codeword codeword = extract(weights, spec);
    double weakest_one = std::numeric_limits<double>::infinity();
    double strongest_zero = 0.0;
    for (std::size_t i = 0; i < codeword.size(); ++i) {
      const double m = std::fabs(static_cast<double>(weights[spec.positions[i]]));
      if (codeword.bits[i]) {
        weakest_one = std::min(weakest_one, m);
      } else {
        strongest_zero = std::max(strongest_zero, m);
      }
    }
    margin = std::min(margin, weakest_one - strongest_zero);
    const BigUint index = codeword_index(codeword, spec.params);
    BigUint low = index;
    mpz_fdiv_r_2exp(low.get_mpz_t(), low.get_mpz_t(), spec.params.k);
    range_ok = range_ok && low == index;
    blocks.push_back(int_to_bits(low, spec.params.k));
  }
  const std::string hex = bits_to_hex(join_blocks(blocks, doc.message_bits));
  const bool separated = margin > 0.0;
  emit(g, out,
       json{{"message", hex}, {"range_check", range_ok}, {"separated", separated},
            {"margin", margin}},
       [&](std::ostream& os) {
         os << hex << '\n'
            << "range_check=" << (range_ok ? "pass" : "fail") << '\n'
            << "separation=" << (separated ? "pass" : "fail") << " margin=" << format_double(margin)
            << '\n';
       });
  return range_ok && separated ? kExitOk : kExitVerify;
}

// ---- prune / noise / attack -------------------------------------------------------

struct PruneOptions {
  std::string in;
  std::string out;
  double rate = 0.0;
};

int cmd_prune(const PruneOptions& o, const Global& g, std::ostream& out) {
  const WeightVector weights = read_weights(o.in);
  const auto [pruned, spec] = prune(weights, o.rate);
  write_weights(o.out, pruned);
  emit(g, out,
       json{{"rate", spec.rate}, {"p", spec.p}, {"cutoff", spec.cutoff}, {"zeroed", spec.zeroed}},
       [&](std::ostream& os) {
         os << "rate=" << format_double(spec.rate) << " p=" << spec.p
            << " cutoff=" << format_double(spec.cutoff) << " zeroed=" << spec.zeroed << '\n';
       });
  return kExitOk;
}

struct NoiseOptions {
  std::string in;
  std::string out;
  double sigma = 0.0;
};

int cmd_noise(const NoiseOptions& o, const Global& g, std::ostream& out) {
  const WeightVector noisy = add_noise(read_weights(o.in), o.sigma, g.seed);
  write_weights(o.out, noisy);
  emit(g, out, json{{"sigma_noise", o.sigma}, {"seed", g.seed}}, [&](std::ostream& os) {
    os << "added N(0, " << format_double(o.sigma) << "^2) noise, seed " << g.seed << '\n';
  });
  return kExitOk;
}

struct AttackOptions {
  std::string in;
  std::string out;
  std::string strategy = "suppress";
  std::uint64_t budget = 0;
  double assumed_rate = 0.95;
  bool two_sided = false;
  std::optional<std::string> spec;
};

int cmd_attack(const AttackOptions& o, const Global& g, std::ostream& out) {
  const WeightVector weights = read_weights(o.in);
  FlipAttackConfig config;
  config.strategy = o.strategy == "inflate" ? FlipStrategy::kInflate : FlipStrategy::kSuppress;
  config.budget = o.budget;
  config.seed = g.seed;
  config.assumed_rate = o.assumed_rate;
  config.mass = o.two_sided ? TailMass::kTwoSided : TailMass::kOneSided;
  const FlipAttackResult result = targeted_flip_attack(weights, config);
  write_weights(o.out, result.weights);

  json j{{"strategy", o.strategy}, {"touched", result.touched.size()}};
  HitCount hits;
  if (o.spec) {
    // The harness knows the embedded codewords; recover them from the input.
    const SpecDocument doc = read_spec(*o.spec);
    for (const EmbedSpec& spec : doc.blocks()) {
      const HitCount h = count_hits(result.touched, spec.positions, extract(weights, spec));
      hits.ones += h.ones;
      hits.zeros += h.zeros;
    }
    j["hits_ones"] = hits.ones;
    j["hits_zeros"] = hits.zeros;
  }
  emit(g, out, j, [&](std::ostream& os) {
    os << o.strategy << ": touched " << result.touched.size() << " weights";
    if (o.spec) os << ", hit " << hits.ones << " one-positions and " << hits.zeros
                   << " zero-positions";
    os << '\n';
  });
  return kExitOk;
}

// ---- eval ---------------------------------------------------------------------------

struct EvalOptions {
  ExperimentConfig config;
  std::optional<std::uint64_t> length;
  std::string rule = "minimal";
  bool two_sided = false;
  bool force = false;
  std::optional<std::string> out;
};

int cmd_eval(EvalOptions o, const Global& g, std::ostream& out) {
  ExperimentConfig& config = o.config;
  config.length = o.length;
  config.rule = parse_rule(o.rule);
  config.mass = o.two_sided ? TailMass::kTwoSided : TailMass::kOneSided;
  config.policy = o.force ? RatioPolicy::kOverride : RatioPolicy::kEnforce;
  config.seed = g.seed;
  const auto rows = run_experiment(config);

  std::uint64_t guarded = 0;
  std::uint64_t guarded_failures = 0;
  std::uint64_t failures = 0;
  for (const auto& row : rows) {
    if (!row.recovered) ++failures;
    if (row.attack_rate <= config.design_rate - 0.01) {
      ++guarded;
      if (!row.recovered) ++guarded_failures;
    }
  }

  if (o.out) {
    std::ostringstream csv;
    write_experiment_csv(csv, rows);
    std::ofstream file(*o.out, std::ios::binary | std::ios::trunc);
    if (!file) throw ParseError(ParseError::Kind::kIo, "cannot open " + *o.out);
    file << csv.str();
    emit(g, out,
         json{{"rows", rows.size()}, {"failures", failures}, {"guarded_failures", guarded_failures}},
         [&](std::ostream& os) {
           os << rows.size() << " rows, " << failures << " failed recoveries, "
              << guarded_failures << " of " << guarded
              << " at attack rates <= design rate - 0.01\n";
         });
  } else {
    write_experiment_csv(out, rows);
  }
  return guarded_failures == 0 ? kExitOk : kExitVerify;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constant-weight-code watermarking for model weights", "cwcmark"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--seed", g.seed, "Seed for generators and trials")->capture_default_str();
  app.add_flag("--quiet", g.quiet, "Print nothing on success");
  app.add_flag("--json", g.json, "Print results as JSON");
  const auto rules = CLI::IsMember({"minimal", "product"});

  std::function<int()> action;

  ParamsOptions po;
  auto* params = app.add_subcommand("params", "Size a constant-weight code");
  params->add_option("-k", po.k, "Payload bits");
  params->add_option("-a,--alpha", po.alpha, "Hamming weight");
  params->add_option("-L,--length", po.length, "Describe this code length instead of searching");
  params->add_option("--tolerance", po.tolerance, "Target pruning tolerance 1 - alpha/L")
      ->check(CLI::Range(0.0, 1.0));
  params->add_option("--rule", po.rule, "Sizing rule: minimal or product")->check(rules);
  params->add_flag("--reference-table", po.table, "Print the published parameter table");
  params->callback([&] { action = [&] { return cmd_params(po, g, out); }; });

  EncodeOptions eo;
  auto* encode_cmd = app.add_subcommand("encode", "Hex payload to codeword");
  encode_cmd->add_option("--message", eo.message, "Payload as hex")->required();
  encode_cmd->add_option("-k", eo.k, "Payload bits (default: 4 per hex digit)");
  encode_cmd->add_option("-a,--alpha", eo.alpha, "Hamming weight")->check(CLI::PositiveNumber);
  encode_cmd->add_option("-L,--length", eo.length, "Code length (default: sized by --rule)");
  encode_cmd->add_option("--rule", eo.rule, "Sizing rule")->check(rules);
  encode_cmd->callback([&] { action = [&] { return cmd_encode(eo, g, out); }; });

  DecodeOptions dco;
  auto* decode_cmd = app.add_subcommand("decode", "Codeword to hex payload");
  decode_cmd->add_option("--codeword", dco.codeword, "Codeword as 0/1, c_0 first")->required();
  decode_cmd->add_option("-k", dco.k, "Payload bits")->required();
  decode_cmd->add_option("-a,--alpha", dco.alpha, "Hamming weight")->required();
  decode_cmd->callback([&] { action = [&] { return cmd_decode(dco, g, out); }; });

  GenerateOptions go;
  auto* generate = app.add_subcommand("generate", "Write a synthetic Gaussian weight file");
  generate->add_option("--n", go.n, "Number of weights")->check(CLI::PositiveNumber);
  generate->add_option("--sigma", go.sigma, "Standard deviation")->check(CLI::PositiveNumber);
  generate->add_option("--out", go.out, "Output weight file")->required();
  generate->callback([&] { action = [&] { return cmd_generate(go, g, out); }; });

  EmbedOptions mo;
  auto* embed_cmd = app.add_subcommand("embed", "Embed a hex payload into a weight file");
  embed_cmd->add_option("--in", mo.in, "Host weight file")->required();
  embed_cmd->add_option("--out", mo.out, "Watermarked weight file")->required();
  embed_cmd->add_option("--spec", mo.spec, "Spec file to write")->required();
  embed_cmd->add_option("--message", mo.message, "Payload as hex")->required();
  embed_cmd->add_option("--key", mo.key, "Secret position key")->required();
  embed_cmd->add_option("-a,--alpha", mo.alpha, "Hamming weight")->check(CLI::PositiveNumber);
  embed_cmd->add_option("-L,--length", mo.length, "Code length (default: sized by --rule)");
  embed_cmd->add_option("--rule", mo.rule, "Sizing rule")->check(rules);
  embed_cmd->add_option("--rate", mo.rate, "Design pruning rate for T1");
  embed_cmd->add_flag("--two-sided", mo.two_sided, "Design T1 from the |w| quantile");
  embed_cmd->add_option("--t0-ratio", mo.t0_ratio, "T0 as a fraction of T1");
  embed_cmd->add_option("--t0", mo.t0, "Explicit T0");
  embed_cmd->add_option("--t1", mo.t1, "Explicit T1");
  embed_cmd->add_option("--block-bits", mo.block_bits, "Split the payload into blocks of k bits")
      ->check(CLI::PositiveNumber);
  embed_cmd->add_flag("--force", mo.force, "Allow L > N/100");
  embed_cmd->callback([&] { action = [&] { return cmd_embed(mo, g, out); }; });

  ExtractOptions xo;
  auto* extract_cmd = app.add_subcommand("extract", "Recover the payload from a weight file");
  extract_cmd->add_option("--in", xo.in, "Weight file")->required();
  extract_cmd->add_option("--spec", xo.spec, "Spec file")->required();
  extract_cmd->callback([&] { action = [&] { return cmd_extract(xo, g, out); }; });

  PruneOptions pro;
  auto* prune_cmd = app.add_subcommand("prune", "Magnitude-prune a weight file");
  prune_cmd->add_option("--in", pro.in, "Weight file")->required();
  prune_cmd->add_option("--out", pro.out, "Pruned weight file")->required();
  prune_cmd->add_option("--rate", pro.rate, "Pruning rate in [0, 1)")->required();
  prune_cmd->callback([&] { action = [&] { return cmd_prune(pro, g, out); }; });

  NoiseOptions no;
  auto* noise_cmd = app.add_subcommand("noise", "Add Gaussian noise to a weight file");
  noise_cmd->add_option("--in", no.in, "Weight file")->required();
  noise_cmd->add_option("--out", no.out, "Noisy weight file")->required();
  noise_cmd->add_option("--sigma", no.sigma, "Noise standard deviation")->required();
  noise_cmd->callback([&] { action = [&] { return cmd_noise(no, g, out); }; });

  AttackOptions ao;
  auto* attack_cmd = app.add_subcommand("attack", "Keyless bit-flip attack");
  attack_cmd->add_option("--in", ao.in, "Weight file")->required();
  attack_cmd->add_option("--out", ao.out, "Attacked weight file")->required();
  attack_cmd->add_option("--strategy", ao.strategy, "suppress or inflate")
      ->check(CLI::IsMember({"suppress", "inflate"}));
  attack_cmd->add_option("--budget", ao.budget, "Number of weights to change")->required();
  attack_cmd->add_option("--assumed-rate", ao.assumed_rate, "Design rate the attacker assumes");
  attack_cmd->add_flag("--two-sided", ao.two_sided, "Attacker uses the |w| quantile design");
  attack_cmd->add_option("--spec", ao.spec, "Spec file, to report hits on embedded positions");
  attack_cmd->callback([&] { action = [&] { return cmd_attack(ao, g, out); }; });

  EvalOptions vo;
  auto* eval_cmd = app.add_subcommand("eval", "Monte-Carlo pruning robustness experiment");
  eval_cmd->add_option("--trials", vo.config.trials, "Number of trials");
  eval_cmd->add_option("--n", vo.config.n, "Host model size")->check(CLI::PositiveNumber);
  eval_cmd->add_option("--sigma", vo.config.sigma, "Host standard deviation")
      ->check(CLI::PositiveNumber);
  eval_cmd->add_option("-k", vo.config.k, "Payload bits")->check(CLI::PositiveNumber);
  eval_cmd->add_option("-a,--alpha", vo.config.alpha, "Hamming weight")
      ->check(CLI::PositiveNumber);
  eval_cmd->add_option("-L,--length", vo.length, "Code length (default: sized by --rule)");
  eval_cmd->add_option("--rule", vo.rule, "Sizing rule")->check(rules);
  eval_cmd->add_option("--design-rate", vo.config.design_rate, "Design pruning rate for T1");
  eval_cmd->add_option("--attack-rates", vo.config.attack_rates, "Comma-separated attack rates")
      ->delimiter(',');
  eval_cmd->add_flag("--two-sided", vo.two_sided, "Design T1 from the |w| quantile");
  eval_cmd->add_option("--t0-ratio", vo.config.t0_ratio, "T0 as a fraction of T1");
  eval_cmd->add_flag("--force", vo.force, "Allow L > N/100");
  eval_cmd->add_option("--out", vo.out, "CSV file (default: stdout)");
  eval_cmd->callback([&] { action = [&] { return cmd_eval(vo, g, out); }; });

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("cwcmark");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action();
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const MalformedCodewordError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const RangeError& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerify;
  } catch (const DesignError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    // DomainError, CapacityError, PolicyError: the arguments are unusable.
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace cwcmark
