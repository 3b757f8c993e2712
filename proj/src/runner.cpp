#include "opuc/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "opuc/cmv.hpp"
#include "opuc/errors.hpp"
#include "opuc/measures.hpp"
#include "opuc/ratio.hpp"
#include "opuc/spectral.hpp"
#include "opuc/szego.hpp"
#include "opuc/zeros.hpp"

namespace opuc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t fnv1a_bytes(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << v;
  std::string s = os.str();
  while (s.size() < 16) s.insert(s.begin(), '0');
  return s;
}

json complex_json(cd z) { return json::array({z.real(), z.imag()}); }

// One experiment job: writes its output files, returns their relative
// paths.  Collected into the manifest after the join barrier.
struct Job {
  std::string name;
  std::function<std::vector<std::string>()> work;
};

class RunContext {
 public:
  explicit RunContext(fs::path dir) : dir_(std::move(dir)) {}

  std::string write_text(const std::string& relative,
                         const std::string& content) const {
    fs::path p = dir_ / relative;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write " + p.string());
    out << content;
    return relative;
  }

  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
};

std::string density_csv(const DensityCurve& curve, std::size_t samples) {
  std::ostringstream os;
  os.precision(17);
  os << "theta,density\n";
  for (std::size_t i = 0; i <= samples; ++i) {
    double theta = two_pi * static_cast<double>(i) / samples;
    double v = curve.density ? curve.density(theta) : 0.0;
    if (!std::isfinite(v)) continue;  // singularity markers are skipped
    os << theta << "," << v << "\n";
  }
  return os.str();
}

std::string cdf_csv(const DistributionFunction& F, std::size_t samples) {
  std::ostringstream os;
  os.precision(17);
  os << "theta,F\n";
  for (std::size_t i = 0; i <= samples; ++i) {
    double theta = two_pi * static_cast<double>(i) / samples;
    os << theta << "," << F(theta) << "\n";
  }
  return os.str();
}

std::string bands_csv(const BandSet& bands) {
  std::ostringstream os;
  os.precision(17);
  os << "band,theta_left,theta_right\n";
  for (std::size_t i = 0; i < bands.bands.size(); ++i)
    os << i << "," << bands.bands[i].lo << "," << bands.bands[i].hi << "\n";
  return os.str();
}

std::size_t tie_N(std::size_t n, double t) {
  return static_cast<std::size_t>(
      std::max<long long>(1, std::llround(static_cast<double>(n) / t)));
}

// The theoretical limit curve of a schedule: closed form when configured,
// otherwise the averaged measure of the limit function.
DensityCurve limit_curve(const ExperimentConfig& cfg) {
  if (cfg.closed_form) return cfg.closed_form->curve();
  return sigma_t_numeric(cfg.schedule.limit_function());
}

std::vector<Job> build_jobs(const ExperimentConfig& cfg,
                            const RunContext& ctx) {
  std::vector<Job> jobs;
  const double t = cfg.t;

  auto zeros_jobs = [&](bool popuc_sets, bool opuc_sets) {
    for (std::size_t n : cfg.ladder) {
      std::size_t N = tie_N(n, t);
      if (popuc_sets) {
        for (std::size_t bi = 0; bi < cfg.betas.size(); ++bi) {
          cd beta = cfg.betas[bi];
          std::ostringstream name;
          name << "popuc_zeros_b" << bi << "_n" << n;
          jobs.push_back(Job{
              name.str(), [&ctx, &cfg, n, N, beta, bi]() {
                ZeroSet zs = popuc_zeros_phase(cfg.schedule, n, N, beta);
                std::ostringstream file;
                file << "popuc_zeros_b" << bi << "_n" << n << ".csv";
                return std::vector<std::string>{
                    ctx.write_text(file.str(), zs.to_csv())};
              }});
        }
      }
      if (opuc_sets) {
        std::ostringstream name;
        name << "opuc_zeros_n" << n;
        jobs.push_back(Job{name.str(), [&ctx, &cfg, n, N]() {
                             // Eigenvalue route within the dense budget;
                             // coefficient iteration beyond it.
                             ZeroSet zs = n <= 2000
                                              ? opuc_zeros_eig(cfg.schedule, n, N)
                                              : opuc_zeros(cfg.schedule, n, N);
                             std::ostringstream file;
                             file << "opuc_zeros_n" << n << ".csv";
                             std::ostringstream coeff_file;
                             coeff_file << "opuc_coefficients_n" << n << ".csv";
                             MonicPolynomial poly =
                                 opuc_polynomial(cfg.schedule, n, N);
                             return std::vector<std::string>{
                                 ctx.write_text(file.str(), zs.to_csv()),
                                 ctx.write_text(coeff_file.str(),
                                                coefficients_csv(poly))};
                           }});
      }
    }
  };

  switch (cfg.kind) {
    case ExperimentKind::Zeros:
      zeros_jobs(true, true);
      break;

    case ExperimentKind::Density:
      jobs.push_back(Job{"density", [&ctx, &cfg]() {
        DensityCurve curve = limit_curve(cfg);
        std::vector<std::string> files;
        files.push_back(ctx.write_text("density.csv", density_csv(curve, 512)));
        DistributionFunction F(curve, 1e-9);
        files.push_back(ctx.write_text("cdf.csv", cdf_csv(F, 512)));
        return files;
      }});
      break;

    case ExperimentKind::Ratio:
      for (RatioKind kind : cfg.ratio_kinds) {
        for (std::size_t pi = 0; pi < cfg.probes.size(); ++pi) {
          cd z = cfg.probes[pi];
          for (std::size_t bi = 0; bi < cfg.betas.size(); ++bi) {
            cd beta = cfg.betas[bi];
            std::ostringstream name;
            name << "ratio_" << ratio_kind_name(kind) << "_p" << pi << "_b"
                 << bi;
            std::string base = name.str();
            jobs.push_back(Job{base, [&ctx, &cfg, kind, z, beta, base]() {
              ConvergenceReport rep = convergence_report(
                  kind, cfg.schedule, beta, z, cfg.ladder, cfg.t);
              json out;
              out["schema"] = 1;
              out["kind"] = ratio_kind_name(kind);
              out["z"] = complex_json(z);
              out["beta"] = complex_json(beta);
              out["monotone_within_noise"] = rep.monotone_within_noise;
              if (cfg.schedule.kind() == Schedule::Kind::Periodic &&
                  cfg.schedule.period() > 1 && kind != RatioKind::PeriodStep)
                out["note"] =
                    "stripped periodic predictions are validated "
                    "empirically by convergence";
              for (const ConvergenceRung& r : rep.rungs) {
                out["rungs"].push_back(
                    {{"n", r.n},
                     {"N", r.N},
                     {"observed", complex_json(r.observed)},
                     {"predicted", complex_json(r.predicted)},
                     {"error", r.error}});
              }
              return std::vector<std::string>{
                  ctx.write_text(base + ".json", out.dump(2) + "\n")};
            }});
          }
        }
      }
      break;

    case ExperimentKind::Compare:
      jobs.push_back(Job{"compare", [&ctx, &cfg]() {
        std::vector<std::string> files;
        DensityCurve curve = limit_curve(cfg);
        DistributionFunction F(curve, 1e-9);
        files.push_back(ctx.write_text("cdf.csv", cdf_csv(F, 512)));
        json cmp;
        cmp["schema"] = 1;
        cmp["ks"] = json::array();
        cd beta = cfg.betas.front();
        for (std::size_t n : cfg.ladder) {
          std::size_t N = tie_N(n, cfg.t);
          ZeroSet zs = popuc_zeros_phase(cfg.schedule, n, N, beta);
          std::ostringstream file;
          file << "popuc_zeros_n" << n << ".csv";
          files.push_back(ctx.write_text(file.str(), zs.to_csv()));
          EmpiricalMeasure emp{zs.zeros};
          KolmogorovResult ks = kolmogorov_distance(emp, F);
          std::vector<cd> emp_m = moments(emp, cfg.moment_count);
          std::vector<cd> th_m = moments(curve, cfg.moment_count, 1e-9);
          json moment_errors = json::array();
          for (std::size_t k = 0; k <= cfg.moment_count; ++k)
            moment_errors.push_back(std::abs(emp_m[k] - th_m[k]));
          cmp["ks"].push_back({{"n", n},
                               {"N", N},
                               {"ks_distance", ks.distance},
                               {"projected", ks.projected},
                               {"moment_errors", moment_errors}});
        }
        cmp["n"] = cfg.ladder.back();
        files.push_back(
            ctx.write_text("comparison.json", cmp.dump(2) + "\n"));
        return files;
      }});
      break;

    case ExperimentKind::Balayage:
      for (std::size_t n : cfg.ladder) {
        std::ostringstream name;
        name << "balayage_n" << n;
        std::string base = name.str();
        jobs.push_back(Job{base, [&ctx, &cfg, n, base]() {
          std::size_t N = tie_N(n, cfg.t);
          ZeroSet zs = n <= 2000 ? opuc_zeros_eig(cfg.schedule, n, N)
                                 : opuc_zeros(cfg.schedule, n, N);
          BalayageMeasure bal = balayage(EmpiricalMeasure{zs.zeros},
                                         cfg.fejer_order);
          std::ostringstream os;
          os.precision(17);
          os << "k,re,im\n";
          for (std::size_t k = 0; k < bal.moments.size(); ++k)
            os << k << "," << bal.moments[k].real() << ","
               << bal.moments[k].imag() << "\n";
          std::vector<std::string> files;
          files.push_back(ctx.write_text(base + "_moments.csv", os.str()));
          std::ostringstream ds;
          ds.precision(17);
          ds << "theta,density\n";
          for (int i = 0; i <= 512; ++i) {
            double theta = two_pi * i / 512.0;
            ds << theta << "," << bal.fejer_density(theta) << "\n";
          }
          files.push_back(ctx.write_text(base + "_density.csv", ds.str()));
          return files;
        }});
      }
      break;

    case ExperimentKind::Moments:
      for (std::size_t n : cfg.ladder) {
        std::ostringstream name;
        name << "moments_n" << n;
        std::string base = name.str();
        jobs.push_back(Job{base, [&ctx, &cfg, n, base]() {
          std::size_t N = tie_N(n, cfg.t);
          cd beta = cfg.betas.front();
          std::vector<cd> interior(n - 1);
          for (std::size_t k = 0; k + 1 < n; ++k)
            interior[k] = cfg.schedule.coefficient(k, N);
          CmvMatrix C = CmvMatrix::build_cutoff(interior, beta);
          std::vector<cd> tm = trace_power_moments(C, cfg.moment_count);
          ZeroSet zs = popuc_zeros_phase(cfg.schedule, n, N, beta);
          std::vector<cd> zm =
              moments(EmpiricalMeasure{zs.zeros}, cfg.moment_count);
          json out;
          out["schema"] = 1;
          out["n"] = n;
          for (std::size_t k = 0; k <= cfg.moment_count; ++k) {
            out["moments"].push_back({{"k", k},
                                      {"trace", complex_json(tm[k])},
                                      {"zeros", complex_json(zm[k])},
                                      {"error", std::abs(tm[k] - zm[k])}});
          }
          return std::vector<std::string>{
              ctx.write_text(base + ".json", out.dump(2) + "\n")};
        }});
      }
      break;

    case ExperimentKind::Bands:
      jobs.push_back(Job{"bands", [&ctx, &cfg]() {
        std::vector<cd> alphas;
        if (cfg.schedule.kind() == Schedule::Kind::Periodic) {
          alphas = cfg.schedule.periodic_coefficients();
        } else if (cfg.schedule.kind() == Schedule::Kind::Constant) {
          alphas = {cfg.schedule.coefficient(0, 1)};
        } else {
          throw UnsupportedVariantError(
              "bands experiment needs a constant or periodic schedule");
        }
        Discriminant d(alphas);
        BandSet bands = band_set(d);
        return std::vector<std::string>{
            ctx.write_text("bands.csv", bands_csv(bands))};
      }});
      break;
  }
  return jobs;
}

}  // namespace

json RunManifest::to_json() const {
  json j;
  j["schema"] = 1;
  j["version"] = version;
  j["run_id"] = run_id;
  j["config"] = config_echo;
  j["wall_seconds"] = wall_seconds;
  j["all_ok"] = all_ok;
  j["jobs"] = json::array();
  for (const JobReport& job : jobs)
    j["jobs"].push_back(
        {{"name", job.name}, {"status", job.status}, {"seconds", job.seconds}});
  j["outputs"] = json::array();
  for (const OutputRecord& out : outputs)
    j["outputs"].push_back({{"path", out.path}, {"checksum", out.checksum}});
  return j;
}

RunManifest run_experiment(const ExperimentConfig& config,
                           std::size_t workers) {
  auto t0 = std::chrono::steady_clock::now();
  RunManifest manifest;
  manifest.version = kLibraryVersion;
  manifest.run_id = config.run_id();
  manifest.config_echo = config.echo;

  fs::path run_dir = fs::path(config.out_dir) / manifest.run_id;
  fs::create_directories(run_dir);
  RunContext ctx(run_dir);

  std::vector<Job> jobs = build_jobs(config, ctx);
  std::vector<JobReport> reports(jobs.size());
  std::vector<std::vector<std::string>> produced(jobs.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      auto start = std::chrono::steady_clock::now();
      JobReport rep;
      rep.name = jobs[i].name;
      try {
        produced[i] = jobs[i].work();
        rep.status = "ok";
      } catch (const std::exception& e) {
        rep.status = e.what();
      }
      rep.seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                        start)
              .count();
      reports[i] = rep;
    }
  };

  std::size_t pool = std::max<std::size_t>(1, workers);
  if (pool == 1 || jobs.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t i = 0; i < std::min(pool, jobs.size()); ++i)
      threads.emplace_back(worker);
    for (std::thread& th : threads) th.join();
  }

  for (std::size_t i = 0; i < jobs.size(); ++i) {
    manifest.jobs.push_back(reports[i]);
    if (reports[i].status != "ok") manifest.all_ok = false;
    for (const std::string& rel : produced[i]) {
      std::ifstream in(run_dir / rel, std::ios::binary);
      std::stringstream ss;
      ss << in.rdbuf();
      manifest.outputs.push_back(OutputRecord{rel, hex64(fnv1a_bytes(ss.str()))});
    }
  }
  std::sort(manifest.outputs.begin(), manifest.outputs.end(),
            [](const OutputRecord& a, const OutputRecord& b) {
              return a.path < b.path;
            });

  manifest.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  std::ofstream mf(run_dir / "manifest.json", std::ios::binary);
  mf << manifest.to_json().dump(2) << "\n";
  return manifest;
}

}  // namespace opuc
