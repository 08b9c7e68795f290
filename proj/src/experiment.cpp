// Copyright 2026 The Obfuskit Authors
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

#include "obfuskit/harness/experiment.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "obfuskit/attacks/inversion.hpp"
#include "obfuskit/attacks/membership.hpp"
#include "obfuskit/attacks/memorization.hpp"
#include "obfuskit/attacks/property.hpp"
#include "obfuskit/obfuscate.hpp"
#include "obfuskit/rng.hpp"

namespace obfuskit {

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;

// Sweep-point seeds hash the r value itself, so an r entry is identical no
// matter where it sits in the sweep list.
uint64_t sweep_seed(uint64_t master, double r) {
  return derive_seed(master, "sweep", std::bit_cast<uint64_t>(r));
}

Dataset load_dataset(const ExperimentConfig& cfg) {
  if (cfg.dataset.generator) {
    const GeneratorConfig& g = *cfg.dataset.generator;
    Dataset data = gen_blobs_at(
        blob_centers_in_band(g.num_classes, g.dim, g.centers_seed, g.band_lo,
                             g.band_hi, g.domain),
        g.per_class, g.points_seed, g.spread, g.domain);
    if (g.quantize) data = quantize_to_integers(std::move(data));
    return data;
  }
  return load_csv(cfg.dataset.file);
}

Dataset subset(const Dataset& data, const std::vector<size_t>& indices) {
  Dataset out;
  out.name = data.name;
  out.dim = data.dim;
  out.num_classes = data.num_classes;
  out.domain = data.domain;
  out.samples.reserve(indices.size());
  for (size_t i : indices) out.samples.push_back(data.samples[i]);
  return out;
}

std::vector<double> normalized_sweep(const std::vector<double>& sweep) {
  std::vector<double> rs;
  bool has_baseline = false;
  for (double r : sweep)
    if (r == 0.0) has_baseline = true;
  if (!has_baseline) rs.push_back(0.0);
  rs.insert(rs.end(), sweep.begin(), sweep.end());
  return rs;
}

double final_val_acc(const SweepResult& entry) {
  auto it = entry.report.aux.find("val_acc");
  if (it != entry.report.aux.end()) return it->second;
  return entry.curve.points.empty() ? 0.0 : entry.curve.points.back().val_acc;
}

void run_membership(const ExperimentConfig& cfg, const Dataset& data,
                    const std::vector<double>& rs,
                    std::vector<SweepResult>& entries) {
  const MembershipScenarioConfig& a = cfg.membership;
  size_t t = static_cast<size_t>(a.target_train_size);
  if (data.size() < 2 * t + 2 * static_cast<size_t>(a.shadow_train_size))
    throw ConfigError(
        "attack.target_train_size: dataset too small for target sets plus "
        "shadow pool");

  // Disjoint carve-up: T members, T non-members, remainder = shadow pool.
  Rng pool_rng(derive_seed(cfg.master_seed, "pool"));
  std::vector<size_t> perm = pool_rng.permutation(data.size());
  std::vector<size_t> member_idx(perm.begin(), perm.begin() + t);
  std::vector<size_t> nonmember_idx(perm.begin() + t, perm.begin() + 2 * t);
  std::vector<size_t> pool_idx(perm.begin() + 2 * t, perm.end());

  Dataset members = subset(data, member_idx);
  Dataset non_members = subset(data, nonmember_idx);
  Dataset shadow_pool = subset(data, pool_idx);

  ModelSpec spec =
      cfg.model.resolve(data.dim, data.num_classes, data.domain);

  MembershipConfig mcfg;
  mcfg.model = spec;
  mcfg.train = cfg.train;
  mcfg.n_shadow = a.n_shadow;
  mcfg.shadow_train_size = a.shadow_train_size;
  mcfg.attack_epochs = a.attack_epochs;
  mcfg.attack_lr = a.attack_lr;
  MembershipAttackModel attack = membership_attack_train(
      shadow_pool, mcfg, derive_seed(cfg.master_seed, "attack"));

  for (double r : rs) {
    uint64_t seed = sweep_seed(cfg.master_seed, r);

    Dataset target_train = members;
    if (r > 0) {
      size_t n_sel = static_cast<size_t>(
          std::floor(r * static_cast<double>(members.size())));
      Rng sel_rng(derive_seed(seed, "selection"));
      std::vector<size_t> sel = sel_rng.permutation(members.size());
      sel.resize(n_sel);
      std::sort(sel.begin(), sel.end());
      IndividualParams params{cfg.obfuscation.coord_ratio,
                              cfg.obfuscation.sigma};
      target_train = obfuscate_dataset_individual(
          members, SensitiveSelection{sel}, params,
          derive_seed(seed, "defense"));
    }

    TrainConfig tc = cfg.train;
    tc.seed = derive_seed(seed, "train");
    TrackedTraining tracked =
        train_tracked(init_model(spec, derive_seed(seed, "init")),
                      target_train, tc, target_train, non_members);

    SweepResult entry;
    entry.r = r;
    entry.report = membership_attack_eval(tracked.model, members.samples,
                                          non_members.samples, attack);
    entry.report.aux["train_acc"] = accuracy(tracked.model, target_train);
    entry.report.aux["val_acc"] = accuracy(tracked.model, non_members);
    entry.curve = std::move(tracked.curve);
    entries.push_back(std::move(entry));
  }
}

void run_memorization(const ExperimentConfig& cfg, const Dataset& data,
                      const std::vector<double>& rs,
                      std::vector<SweepResult>& entries) {
  const MemorizationScenarioConfig& a = cfg.memorization;
  if (static_cast<size_t>(a.secret_count) > data.size())
    throw ConfigError("attack.secret_count: larger than the dataset");

  SecretCodec codec;
  codec.bits_per_feature = a.bits_per_feature;
  codec.dim = data.dim;
  codec.count = a.secret_count;

  // Encoded targets strided across the dataset (blob order groups classes,
  // so this picks roughly one sample per class).
  SensitiveSelection targets;
  for (int i = 0; i < a.secret_count; ++i)
    targets.indices.push_back(static_cast<size_t>(i) * data.size() /
                              static_cast<size_t>(a.secret_count));

  IndividualParams params{cfg.obfuscation.coord_ratio, cfg.obfuscation.sigma};

  for (double r : rs) {
    uint64_t seed = sweep_seed(cfg.master_seed, r);

    // The sensitive set at ratio r: always the encoded targets, plus random
    // extra samples up to floor(r * N). The extras are noised here; the
    // targets are noised inside the attack evaluation.
    Dataset working = data;
    std::optional<IndividualParams> defense;
    if (r > 0) {
      defense = params;
      size_t want = static_cast<size_t>(
          std::floor(r * static_cast<double>(data.size())));
      std::vector<size_t> extra;
      if (want > targets.indices.size()) {
        Rng sel_rng(derive_seed(seed, "selection"));
        std::vector<size_t> perm = sel_rng.permutation(data.size());
        for (size_t idx : perm) {
          if (extra.size() + targets.indices.size() >= want) break;
          if (idx < static_cast<size_t>(a.secret_count)) continue;
          extra.push_back(idx);
        }
        std::sort(extra.begin(), extra.end());
        working = obfuscate_dataset_individual(data, SensitiveSelection{extra},
                                               params,
                                               derive_seed(seed, "extra"));
      }
    }

    MemorizationConfig mcfg;
    mcfg.method = a.method;
    mcfg.lsb_bits = a.lsb_bits;
    mcfg.sign_weight = a.sign_weight;
    mcfg.model = cfg.model.resolve(data.dim, data.num_classes, data.domain);
    mcfg.train = cfg.train;
    mcfg.seed = seed;

    SweepResult entry;
    entry.r = r;
    entry.report = memorization_attack_eval(working, targets, defense, codec,
                                            mcfg, &entry.curve);
    entries.push_back(std::move(entry));
  }
}

void run_inversion(const ExperimentConfig& cfg, const Dataset& data,
                   const std::vector<double>& rs,
                   std::vector<SweepResult>& entries) {
  const InversionScenarioConfig& a = cfg.inversion;
  if (a.target_class >= data.num_classes)
    throw ConfigError("attack.target_class: out of range for the dataset");

  InversionConfig icfg;
  icfg.model = cfg.model.resolve(data.dim, data.num_classes, data.domain);
  icfg.train = cfg.train;
  icfg.steps = a.steps;
  icfg.step_size = a.step_size;

  for (double r : rs) {
    icfg.seed = sweep_seed(cfg.master_seed, r);
    std::optional<GroupParams> defense;
    if (r > 0) defense = GroupParams{r, cfg.obfuscation.sigma};

    SweepResult entry;
    entry.r = r;
    entry.report = inversion_attack_eval(data, a.target_class, defense, icfg,
                                         &entry.curve);
    entries.push_back(std::move(entry));
  }
}

void run_property(const ExperimentConfig& cfg, const std::vector<double>& rs,
                  std::vector<SweepResult>& entries) {
  const PropertyScenarioConfig& a = cfg.property;
  const GeneratorConfig& g = *cfg.dataset.generator;

  // The with-property family is one-sided; the without family is mirrored
  // (and thus twice the size), the shape a negated-augmented with-property
  // set drifts toward.
  BlobFamilySpec with_spec;
  with_spec.num_classes = g.num_classes;
  with_spec.dim = g.dim;
  with_spec.per_class = g.per_class;
  with_spec.spread = g.spread;
  with_spec.domain = g.domain;
  with_spec.quantize = g.quantize;
  with_spec.centers_seed = a.with_centers_seed;
  with_spec.band_lo = a.with_band_lo;
  with_spec.band_hi = a.with_band_hi;

  BlobFamilySpec without_spec = with_spec;
  without_spec.centers_seed = a.without_centers_seed;
  without_spec.band_lo = a.without_band_lo;
  without_spec.band_hi = a.without_band_hi;
  without_spec.mirrored = true;

  DatasetGenerator family_with = make_blob_family(with_spec);
  DatasetGenerator family_without = make_blob_family(without_spec);

  ModelSpec spec = cfg.model.resolve(g.dim, g.num_classes, g.domain);

  PropertyConfig pcfg;
  pcfg.model = spec;
  pcfg.train = cfg.train;
  pcfg.n_each = a.n_each;
  pcfg.attack_epochs = a.attack_epochs;
  pcfg.attack_lr = a.attack_lr;
  PropertyAttackModel attack = property_attack_train(
      family_with, family_without, pcfg, derive_seed(cfg.master_seed, "attack"));

  for (double r : rs) {
    uint64_t seed = sweep_seed(cfg.master_seed, r);
    std::optional<GroupParams> defense;
    if (r > 0) defense = GroupParams{r, cfg.obfuscation.sigma};

    std::vector<Model> eval_with =
        train_family_models(family_with, a.n_eval, defense, spec, cfg.train,
                            seed, "eval_with");
    std::vector<Model> eval_without =
        train_family_models(family_without, a.n_eval, std::nullopt, spec,
                            cfg.train, seed, "eval_without");

    SweepResult entry;
    entry.r = r;
    entry.report = property_attack_eval(attack, eval_with, eval_without);

    // Accuracy cost on one representative with-property training run. Three
    // pooled draws keep the validation estimate quiet.
    Dataset curve_train = family_with(derive_seed(seed, "curve_train"));
    Dataset curve_val = family_with(derive_seed(seed, "curve_val"));
    for (uint64_t extra = 1; extra <= 2; ++extra) {
      Dataset more = family_with(derive_seed(seed, "curve_val", extra));
      curve_val.samples.insert(curve_val.samples.end(), more.samples.begin(),
                               more.samples.end());
    }
    if (defense)
      curve_train = obfuscate_dataset_groups(curve_train, {GroupSpec::whole()},
                                             *defense,
                                             derive_seed(seed, "curve_defense"));
    TrainConfig tc = cfg.train;
    tc.seed = derive_seed(seed, "curve_seed");
    TrackedTraining tracked =
        train_tracked(init_model(spec, derive_seed(seed, "curve_init")),
                      curve_train, tc, curve_train, curve_val);
    entry.report.aux["train_acc"] = accuracy(tracked.model, curve_train);
    entry.report.aux["val_acc"] = accuracy(tracked.model, curve_val);
    entry.curve = std::move(tracked.curve);
    entries.push_back(std::move(entry));
  }
}

std::string r_tag(double r) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "r%g", r);
  std::string tag = buf;
  for (char& c : tag)
    if (c == '.') c = 'p';
  return tag;
}

}  // namespace

std::string RunReport::to_json_string() const {
  json j;
  j["version"] = version;
  j["config"] = json::parse(config_echo);
  json entries_json = json::array();
  for (const SweepResult& entry : entries) {
    json e;
    e["r"] = entry.r;
    e["delta_acc"] = entry.delta_acc;
    e["report"] = json::parse(entry.report.to_json_string());
    json curve = json::array();
    for (const CurvePoint& p : entry.curve.points)
      curve.push_back({p.epoch, p.train_acc, p.val_acc});
    e["curve"] = std::move(curve);
    entries_json.push_back(std::move(e));
  }
  j["entries"] = std::move(entries_json);
  j["wall_clock_sec"] = wall_clock_sec;
  return j.dump(2);
}

RunReport run_experiment(const ExperimentConfig& cfg) {
  auto start = std::chrono::steady_clock::now();

  RunReport report;
  report.version = kVersion;
  report.config_echo = cfg.echo;

  std::vector<double> rs = normalized_sweep(cfg.obfuscation.sweep_r);

  if (cfg.scenario == Scenario::Property) {
    run_property(cfg, rs, report.entries);
  } else {
    Dataset data = load_dataset(cfg);
    data.validate();
    switch (cfg.scenario) {
      case Scenario::Membership:
        run_membership(cfg, data, rs, report.entries);
        break;
      case Scenario::Memorization:
        run_memorization(cfg, data, rs, report.entries);
        break;
      case Scenario::Inversion:
        run_inversion(cfg, data, rs, report.entries);
        break;
      case Scenario::Property:
        break;
    }
  }

  double baseline = 0.0;
  for (const SweepResult& entry : report.entries)
    if (entry.r == 0.0) baseline = final_val_acc(entry);
  for (SweepResult& entry : report.entries)
    entry.delta_acc = baseline - final_val_acc(entry);

  report.wall_clock_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

void write_run_outputs(const RunReport& report, const ExperimentConfig& cfg) {
  namespace fs = std::filesystem;
  fs::path out_dir(cfg.output_dir);
  fs::create_directories(out_dir / "artifacts");

  {
    std::ofstream out(out_dir / "report.json");
    if (!out)
      throw std::runtime_error("report: cannot write " +
                               (out_dir / "report.json").string());
    out << report.to_json_string() << "\n";
  }
  {
    std::ofstream out(out_dir / "curves.csv");
    out << "r,epoch,train,val\n";
    for (const SweepResult& entry : report.entries)
      for (const CurvePoint& p : entry.curve.points)
        out << entry.r << "," << p.epoch << "," << p.train_acc << ","
            << p.val_acc << "\n";
  }

  // PGM dumps need a declared sample shape.
  int h = 0, w = 0;
  Domain domain;
  if (cfg.dataset.generator && cfg.dataset.generator->shape_h > 0) {
    h = cfg.dataset.generator->shape_h;
    w = cfg.dataset.generator->shape_w;
    domain = cfg.dataset.generator->domain;
  }
  if (h <= 0) return;

  for (const SweepResult& entry : report.entries) {
    std::string tag = r_tag(entry.r);
    for (const auto& [name, values] : entry.report.artifacts) {
      if (static_cast<int>(values.size()) != h * w) continue;
      bool per_sweep = name.rfind("recovered", 0) == 0 || name == "inverted";
      bool once = (name.rfind("original", 0) == 0 || name == "class_mean") &&
                  entry.r == 0.0;
      if (!per_sweep && !once) continue;
      std::string file = per_sweep ? name + "_" + tag + ".pgm" : name + ".pgm";
      save_pgm(values, h, w, domain, (out_dir / "artifacts" / file).string());
    }
  }
}

}  // namespace obfuskit
