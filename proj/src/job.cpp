#include "spinbench/job.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "spinbench/oracle.hpp"
#include "spinbench/presets.hpp"
#include "spinbench/vectors.hpp"

namespace spinbench {

namespace {

using nlohmann::json;

json complex_to_json(Complex z) {
  return json{{"re", z.real()}, {"im", z.imag()}};
}

Complex complex_from_json(const json& j, const std::string& what) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    throw JobConfigError(what + ": complex values are {\"re\":..,\"im\":..}");
  return {j["re"].get<double>(), j["im"].get<double>()};
}

FamilyKind kind_from_string(const std::string& s) {
  if (s == "rational") return FamilyKind::Rational;
  if (s == "rational-super") return FamilyKind::RationalSuper;
  if (s == "trig") return FamilyKind::Trig;
  if (s == "trig-super") return FamilyKind::TrigSuper;
  throw JobConfigError("unknown family kind '" + s + "'");
}

struct ParsedJob {
  ChainSpec spec;
  std::vector<int> counts;
  SolverConfig solver;
  std::vector<std::string> tasks;
  double tol = 1e-8;
  std::vector<BetheRootSet> given_roots;
  std::string preset_name;  // empty for explicit specs
};

BetheRootSet root_set_from_json(const json& j, int levels,
                                const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != levels)
    throw JobConfigError(what + ": expected " + std::to_string(levels) +
                         " root levels");
  BetheRootSet r = BetheRootSet::empty(levels);
  for (int k = 0; k < levels; ++k) {
    if (!j[k].is_array())
      throw JobConfigError(what + ": each level is an array of roots");
    for (const auto& e : j[k])
      r.levels[k].push_back(complex_from_json(e, what));
  }
  return r;
}

json root_set_to_json(const BetheRootSet& r) {
  json levels = json::array();
  for (const auto& lv : r.levels) {
    json one = json::array();
    for (const Complex& z : lv) one.push_back(complex_to_json(z));
    levels.push_back(one);
  }
  return levels;
}

ParsedJob parse(const json& cfg) {
  if (!cfg.is_object()) throw JobConfigError("config must be a JSON object");

  std::optional<ChainSpec> spec;
  std::string preset_name;
  std::vector<int> default_counts;

  if (cfg.contains("preset")) {
    preset_name = cfg["preset"].get<std::string>();
    Preset p = preset(preset_name);
    spec = p.spec;
    default_counts = p.default_counts;
  } else if (cfg.contains("family")) {
    const json& f = cfg["family"];
    if (!f.contains("kind") || !f.contains("m") || !f.contains("n"))
      throw JobConfigError("family needs kind, m, n");
    const FamilyKind kind = kind_from_string(f["kind"].get<std::string>());
    const GradedSpaceSpec space(f["m"].get<int>(), f["n"].get<int>());
    Complex param;
    if (is_rational(kind))
      param = f.contains("hbar") ? complex_from_json(f["hbar"], "hbar")
                                 : Complex(1.0);
    else if (f.contains("q"))
      param = complex_from_json(f["q"], "q");
    else
      throw JobConfigError("trig families need q");
    const AlgebraFamily fam(kind, space, param);
    const Complex a0 = is_rational(kind) ? Complex(0.0) : Complex(1.0);
    spec = ChainSpec(fam, 1, {a0});
  } else {
    throw JobConfigError("config needs either 'preset' or 'family'");
  }

  // L / inhomogeneity overrides
  int L = spec->L;
  if (cfg.contains("L")) L = cfg["L"].get<int>();
  std::vector<Complex> a = spec->inhomogeneities;
  if (cfg.contains("inhomogeneities")) {
    a.clear();
    for (const auto& e : cfg["inhomogeneities"])
      a.push_back(complex_from_json(e, "inhomogeneities"));
    if (static_cast<int>(a.size()) != L)
      throw JobConfigError("inhomogeneities must have length L");
  } else if (L != spec->L) {
    a.assign(static_cast<size_t>(L), spec->inhomogeneities[0]);
  }
  ParsedJob job{ChainSpec(spec->family, L, a), {}, {}, {}, 1e-8, {},
                preset_name};

  const int levels = job.spec.family.dim() - 1;
  if (cfg.contains("counts")) {
    job.counts = cfg["counts"].get<std::vector<int>>();
    if (static_cast<int>(job.counts.size()) != levels)
      throw JobConfigError("counts must have m+n-1 entries");
    for (int c : job.counts)
      if (c < 0) throw JobConfigError("counts must be nonnegative");
  } else if (!default_counts.empty()) {
    job.counts = default_counts;
  } else {
    job.counts.assign(static_cast<size_t>(levels), 0);
  }

  if (cfg.contains("solver")) {
    const json& s = cfg["solver"];
    if (s.contains("seeds")) job.solver.seeds = s["seeds"].get<int>();
    if (s.contains("seed_radius"))
      job.solver.seed_radius = s["seed_radius"].get<double>();
    if (s.contains("max_iterations"))
      job.solver.max_iterations = s["max_iterations"].get<int>();
    if (s.contains("residual_tol"))
      job.solver.residual_tol = s["residual_tol"].get<double>();
    if (s.contains("dedupe_tol"))
      job.solver.dedupe_tol = s["dedupe_tol"].get<double>();
    if (s.contains("rng_seed"))
      job.solver.rng_seed = s["rng_seed"].get<std::uint64_t>();
    if (job.solver.seeds < 0 || job.solver.max_iterations < 1 ||
        job.solver.residual_tol <= 0 || job.solver.dedupe_tol <= 0 ||
        job.solver.seed_radius <= 0)
      throw JobConfigError("solver parameters out of range");
  }

  if (cfg.contains("tol")) job.tol = cfg["tol"].get<double>();
  if (job.tol <= 0) throw JobConfigError("tol must be positive");

  static const std::vector<std::string> known{"check", "solve", "verify",
                                              "vector", "spectrum"};
  if (!cfg.contains("tasks") || !cfg["tasks"].is_array() ||
      cfg["tasks"].empty())
    throw JobConfigError("tasks must be a nonempty array");
  for (const auto& t : cfg["tasks"]) {
    const std::string name = t.get<std::string>();
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw JobConfigError("unknown task '" + name + "'");
    job.tasks.push_back(name);
  }

  if (cfg.contains("roots")) {
    for (const auto& rs : cfg["roots"])
      job.given_roots.push_back(root_set_from_json(rs, levels, "roots"));
  }
  return job;
}

bool wants(const ParsedJob& job, const std::string& task) {
  return std::find(job.tasks.begin(), job.tasks.end(), task) !=
         job.tasks.end();
}

json judged(double value, double tol, bool* all_pass) {
  const bool ok = value < tol;
  if (!ok && all_pass) *all_pass = false;
  return json{{"value", value}, {"tol", tol}, {"pass", ok}};
}

Complex sample_center(const ChainSpec& spec) {
  if (is_rational(spec.family.kind)) {
    Complex c = 0.0;
    for (const Complex& a : spec.inhomogeneities) c += a;
    return c / static_cast<double>(spec.L);
  }
  double logsum = 0.0;
  for (const Complex& a : spec.inhomogeneities)
    logsum += std::log(std::max(1e-12, std::abs(a)));
  return std::exp(logsum / spec.L);
}

std::vector<Complex> sample_points(const ChainSpec& spec, int n,
                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  const auto unit = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  const Complex c = sample_center(spec);
  std::vector<Complex> out;
  while (static_cast<int>(out.size()) < n) {
    const Complex z =
        c + Complex(1.2 + 1.3 * unit(), 0.4 + 1.1 * unit());
    bool clear = true;  // keep clear of weight zeros
    const StructureFunctions s(spec.family);
    for (const Complex& a : spec.inhomogeneities)
      if (std::abs(s.b(z, a)) < 0.2 || std::abs(s.a(1, z, a)) < 0.2)
        clear = false;
    if (clear) out.push_back(z);
  }
  return out;
}

}  // namespace

JobResult run(const json& cfg) {
  const auto t_start = std::chrono::steady_clock::now();
  const ParsedJob job = [&] {
    try {
      return parse(cfg);
    } catch (const JobConfigError&) {
      throw;
    } catch (const nlohmann::json::exception& e) {
      throw JobConfigError(std::string("config: ") + e.what());
    } catch (const std::invalid_argument& e) {
      throw JobConfigError(std::string("config: ") + e.what());
    } catch (const std::out_of_range& e) {
      throw JobConfigError(std::string("config: ") + e.what());
    }
  }();
  const ChainSpec& spec = job.spec;
  const int levels = spec.family.dim() - 1;

  JobResult result;
  json& report = result.report;

  // --- meta ---
  {
    json meta;
    if (!job.preset_name.empty()) meta["preset"] = job.preset_name;
    meta["family"] = family_name(spec.family.kind);
    meta["m"] = spec.family.space.m;
    meta["n"] = spec.family.space.n;
    meta["L"] = spec.L;
    json inh = json::array();
    for (const Complex& a : spec.inhomogeneities)
      inh.push_back(complex_to_json(a));
    meta["inhomogeneities"] = inh;
    if (is_rational(spec.family.kind))
      meta["hbar"] = complex_to_json(spec.family.hbar);
    else
      meta["q"] = complex_to_json(spec.family.q);
    meta["counts"] = job.counts;
    meta["rng_seed"] = job.solver.rng_seed;
    meta["tol"] = job.tol;
    report["meta"] = meta;
  }

  std::mt19937_64 rng(job.solver.rng_seed);
  const auto unit = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  const auto draw = [&](double re0, double spread) {
    return Complex(re0 + spread * (unit() - 0.5),
                   spread * (unit() - 0.5));
  };

  // --- check ---
  if (wants(job, "check")) {
    json check;
    const double re0 = is_rational(spec.family.kind) ? 0.0 : 1.5;
    double ybe = 0.0, unit_res = 0.0;
    for (int t = 0; t < 20; ++t) {
      ybe = std::max(ybe, check_ybe(spec.family, draw(re0, 2.0),
                                    draw(re0, 2.0), draw(re0, 2.0)));
      unit_res = std::max(
          unit_res, check_unitarity(spec.family, draw(re0, 2.0),
                                    draw(re0, 2.0)));
    }
    check["ybe"] = judged(ybe, 1e-10, &result.all_pass);
    check["unitarity"] = judged(unit_res, 1e-10, &result.all_pass);

    // RTT on aux (x) aux (x) sites
    {
      const Complex u = draw(re0, 2.0), v = draw(re0, 2.0);
      std::vector<GradedSpaceSpec> fs(spec.L + 2, spec.family.space);
      const OperatorMatrix Tu = build_monodromy(spec, u);
      const OperatorMatrix Tv = build_monodromy(spec, v);
      std::vector<int> pos1{0}, pos2{1};
      for (int l = 0; l < spec.L; ++l) {
        pos1.push_back(2 + l);
        pos2.push_back(2 + l);
      }
      const OperatorMatrix T1 = embed_at(Tu, fs, pos1);
      const OperatorMatrix T2 = embed_at(Tv, fs, pos2);
      const OperatorMatrix R12 =
          embed_at(build_r(spec.family, u, v), fs, {0, 1});
      const double rtt = (R12.matrix() * T1.matrix() * T2.matrix() -
                          T2.matrix() * T1.matrix() * R12.matrix())
                             .norm();
      check["rtt"] = judged(rtt, 1e-9, &result.all_pass);
    }

    double comm = 0.0;
    for (int t = 0; t < 3; ++t)
      comm = std::max(comm, check_commuting(spec, draw(re0, 2.0),
                                            draw(re0, 2.0)));
    check["commutativity"] = judged(comm, 1e-9, &result.all_pass);

    // highest-weight action against the product weights
    {
      const WeightFunctions wf(spec);
      const Vector omega = vacuum(spec);
      double hw = 0.0;
      for (int t = 0; t < 3; ++t) {
        const Complex u = draw(re0, 2.0);
        const OperatorMatrix T = build_monodromy(spec, u);
        for (int i = 1; i <= spec.family.dim(); ++i)
          for (int j = 1; j <= spec.family.dim(); ++j) {
            const Vector x = extract_tij(T, i, j).matrix() * omega;
            if (i > j)
              hw = std::max(hw, x.norm());
            else if (i == j)
              hw = std::max(hw, (x - wf.lambda(i, u) * omega).norm());
          }
      }
      check["highest_weight"] = judged(hw, 1e-10, &result.all_pass);
    }
    report["check"] = check;
  }

  // --- solve ---
  std::vector<BetheSolution> sets;
  if (!job.given_roots.empty()) {
    for (const auto& r : job.given_roots) {
      BetheSolution s;
      s.roots = r;
      double worst = 0.0;
      for (const Complex& c : bethe_residual_general(spec, r))
        worst = std::max(worst, std::abs(c));
      s.residual = worst;
      sets.push_back(std::move(s));
    }
  }
  if (wants(job, "solve")) {
    if (job.given_roots.empty())
      sets = solve_bethe(spec, job.counts, job.solver);
    json solve;
    json arr = json::array();
    for (const auto& s : sets) {
      json one;
      one["levels"] = root_set_to_json(s.roots);
      json flat = json::array();
      for (int k = 1; k <= s.roots.num_levels(); ++k)
        for (int i = 0; i < s.roots.count(k); ++i) {
          const Complex z = s.roots.levels[k - 1][i];
          flat.push_back(json{{"level", k},
                              {"index", i},
                              {"re", z.real()},
                              {"im", z.imag()},
                              {"residual", s.residual}});
        }
      one["roots"] = flat;
      one["max_residual"] = s.residual;
      one["tol"] = job.solver.residual_tol;
      one["singular"] = s.singular;
      arr.push_back(one);
    }
    solve["root_sets"] = arr;
    solve["count"] = sets.size();
    report["solve"] = solve;
  }

  // --- verify ---
  if (wants(job, "verify") && !sets.empty()) {
    json verify;
    json arr = json::array();
    for (const auto& s : sets) {
      json one;
      double general = 0.0, consistency = 0.0;
      const auto rg = bethe_residual_general(spec, s.roots);
      const auto rd = bethe_residual_distinguished(spec, s.roots);
      for (size_t i = 0; i < rg.size(); ++i) {
        general = std::max(general, std::abs(rg[i]));
        consistency = std::max(consistency, std::abs(rg[i] - rd[i]));
      }
      one["general_max"] = judged(general, job.solver.residual_tol * 10,
                                  &result.all_pass);
      one["forms_consistency"] = judged(consistency, 1e-12, &result.all_pass);
      if (!job.preset_name.empty()) {
        const Preset p = preset(job.preset_name);
        double dspec = 0.0;
        const auto rs = p.specialized_residual(spec, s.roots);
        for (size_t i = 0; i < rg.size(); ++i)
          dspec = std::max(dspec, std::abs(rg[i] - rs[i]));
        one["specialized_consistency"] =
            judged(dspec, 1e-12, &result.all_pass);
      }
      double residue = 0.0;
      for (int k = 1; k <= levels; ++k)
        for (int j = 1; j <= s.roots.count(k); ++j)
          residue =
              std::max(residue, analyticity_check(spec, s.roots, k, j));
      one["analyticity_max"] = judged(residue, job.tol, &result.all_pass);
      arr.push_back(one);
    }
    verify["sets"] = arr;
    report["verify"] = verify;
  }

  // --- vector ---
  if (wants(job, "vector") && !sets.empty()) {
    json vec;
    json arr = json::array();
    const auto samples = sample_points(spec, 5, job.solver.rng_seed);
    for (const auto& s : sets) {
      json one;
      if (s.singular) {
        one["skipped"] = "singular configuration";
        arr.push_back(one);
        continue;
      }
      const BetheVector phi = bethe_vector(spec, s.roots);
      one["constructor"] = phi.provenance.substr(0, phi.provenance.find(' '));
      if (phi.norm() == 0.0) {
        one["skipped"] = "vanishing Bethe vector";
        arr.push_back(one);
        continue;
      }
      const auto lam = [&](Complex u0) {
        return eigenvalue_lambda(spec, s.roots, u0);
      };
      one["eigenvector_residual"] = judged(
          eigenvector_residual(spec, phi.state, lam, samples), job.tol,
          &result.all_pass);

      // supertrace route, when tractable and distinct from the dispatch
      try {
        const BetheVector alt = phi_supertrace(spec, s.roots);
        const Complex scale =
            alt.state.dot(phi.state) /
            std::max(1e-300, alt.state.squaredNorm());
        const double defect = (phi.state - scale * alt.state).norm() /
                              std::max(1e-300, phi.norm());
        one["constructor_defect"] = judged(defect, 1e-9, &result.all_pass);
      } catch (const std::exception&) {
        one["constructor_defect"] = nullptr;
      }

      // Cartan sector
      {
        double worst = 0.0;
        for (int jgen = 1; jgen <= spec.family.dim(); ++jgen) {
          const OperatorMatrix cg = cartan_generator(spec, jgen);
          const Complex ev = cartan_eigenvalue(spec, jgen, s.roots.counts());
          worst = std::max(worst, (cg.matrix() * phi.state - ev * phi.state)
                                          .norm() /
                                      phi.norm());
        }
        one["cartan_residual"] = judged(worst, 1e-9, &result.all_pass);
      }
      arr.push_back(one);
    }
    vec["sets"] = arr;
    report["vector"] = vec;
  }

  // --- spectrum ---
  if (wants(job, "spectrum")) {
    json spectrum_block;
    const Complex u0 = sample_points(spec, 1, job.solver.rng_seed + 7)[0];
    const SpectrumReport rep = spectrum(spec, u0);
    spectrum_block["sample"] = complex_to_json(u0);
    std::vector<Complex> ev = rep.eigenvalues;
    std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
      if (a.real() != b.real()) return a.real() < b.real();
      return a.imag() < b.imag();
    });
    json evj = json::array();
    Complex trace = 0.0;
    for (const Complex& e : ev) {
      evj.push_back(complex_to_json(e));
      trace += e;
    }
    spectrum_block["eigenvalues"] = evj;
    spectrum_block["trace"] = complex_to_json(trace);
    json matches = json::array();
    for (size_t i = 0; i < sets.size(); ++i) {
      if (sets[i].singular) continue;
      const Complex lam = eigenvalue_lambda(spec, sets[i].roots, u0);
      const bool ok = match_eigenvalue(rep, lam, 1e-7);
      if (!ok) result.all_pass = false;
      matches.push_back(json{{"set", i},
                             {"lambda", complex_to_json(lam)},
                             {"matched", ok},
                             {"tol", 1e-7}});
    }
    spectrum_block["matches"] = matches;
    report["spectrum"] = spectrum_block;
  }

  const auto t_end = std::chrono::steady_clock::now();
  report["timings"] = json{
      {"total_ms",
       std::chrono::duration<double, std::milli>(t_end - t_start).count()}};
  return result;
}

std::string report_to_csv(const nlohmann::json& report) {
  std::ostringstream os;
  os << "level,index,re,im,residual\n";
  if (report.contains("solve"))
    for (const auto& set : report["solve"]["root_sets"])
      for (const auto& r : set["roots"]) {
        os << r["level"].get<int>() << "," << r["index"].get<int>() << ",";
        os.precision(17);
        os << r["re"].get<double>() << "," << r["im"].get<double>() << ","
           << r["residual"].get<double>() << "\n";
      }
  return os.str();
}

void emit_report(const nlohmann::json& report, const std::string& format,
                 const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("emit_report: cannot open '" + path + "'");
  if (format == "json")
    out << report.dump(2) << "\n";
  else if (format == "csv")
    out << report_to_csv(report);
  else
    throw JobConfigError("emit_report: unknown format '" + format + "'");
  if (!out.good())
    throw std::runtime_error("emit_report: write failure on '" + path + "'");
}

std::string report_bytes(const nlohmann::json& report) {
  nlohmann::json stripped = report;
  stripped.erase("timings");
  return stripped.dump(2);
}

}  // namespace spinbench
