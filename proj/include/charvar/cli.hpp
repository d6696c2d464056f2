#ifndef CHARVAR_CLI_HPP
#define CHARVAR_CLI_HPP

#include <charvar/charvar.hpp>
#include <charvar/io.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace charvar::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 1;
inline constexpr int kExitUsage = 2;

enum class Format { json, csv };

struct CampaignConfig {
  std::string command;
  std::string subaction;               ///< cover: push, extend, roundtrip, fiber
  std::optional<int> k;
  int n_lo = 3;
  int n_hi = 3;
  int count = 1;
  std::uint64_t seed = 0;
  Tolerances tol = kDefaultTolerances;
  Format format = Format::json;
  bool sorted = false;                 ///< output is already index-ordered
  bool abelian_points = false;
  double refine_radius = 0.0;          ///< link-sample: > 0 projects onto g = 0 (n = 3)
  std::string inject_fault;            ///< selftest mutation hook
  int threads = 1;
};

/// "3" or "2..8".
inline std::optional<std::pair<int, int>> parse_range(const std::string& s) {
  try {
    const auto dots = s.find("..");
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const int v = std::stoi(s, &used);
      if (used != s.size()) return std::nullopt;
      return std::pair{v, v};
    }
    const std::string a = s.substr(0, dots), b = s.substr(dots + 2);
    const int lo = std::stoi(a, &used);
    if (used != a.size()) return std::nullopt;
    const int hi = std::stoi(b, &used);
    if (used != b.size() || hi < lo) return std::nullopt;
    return std::pair{lo, hi};
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

/// CHARVAR_THREADS, clamped to [1, 256]; 1 when unset or malformed.
inline int threads_from_env() {
  const char* v = std::getenv("CHARVAR_THREADS");
  if (v == nullptr) return 1;
  char* end = nullptr;
  const long t = std::strtol(v, &end, 10);
  if (end == v || *end != '\0' || t < 1) return 1;
  return static_cast<int>(std::min<long>(t, 256));
}

/// Runs fn(i) for i < count on `threads` workers; results come back in
/// index order whatever the schedule.
template <class T>
std::vector<T> parallel_map(int count, int threads, const std::function<T(int)>& fn) {
  std::vector<T> out(static_cast<std::size_t>(count));
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = fn(i);
    return out;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < count; i += threads) out[static_cast<std::size_t>(i)] = fn(i);
    });
  for (auto& th : pool) th.join();
  return out;
}

/// One processed sample: its output line and whether its invariants held.
struct Record {
  std::string line;
  bool ok = true;
  std::string failure;
};

inline Record failed_record(int index, std::uint64_t seed, const std::string& what) {
  io::json j{{"index", index}, {"seed", seed}, {"error", what}};
  return {j.dump(), false, what};
}

inline int emit(const std::vector<Record>& records, const std::string& header, std::ostream& out, std::ostream& err,
                const std::string& name, std::uint64_t seed) {
  if (!header.empty()) out << header << '\n';
  int failures = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    out << records[i].line << '\n';
    if (!records[i].ok) {
      ++failures;
      err << name << ": sample " << i << " (seed " << seed << ") failed: " << records[i].failure << '\n';
    }
  }
  return failures;
}

inline std::string usage_error(std::ostream& err, const std::string& msg) {
  err << "usage error: " << msg << '\n';
  return msg;
}

inline bool validate_count(const CampaignConfig& c, std::ostream& err) {
  if (c.count < 1) {
    usage_error(err, "--count must be at least 1");
    return false;
  }
  return true;
}

inline bool validate_n(const CampaignConfig& c, std::ostream& err) {
  if (c.n_lo < 2 || c.n_hi > 12 || c.n_lo > c.n_hi) {
    usage_error(err, "--n must lie in 2..12");
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// sample

inline int cmd_sample(const CampaignConfig& c, std::ostream& out, std::ostream& err) {
  if (!validate_count(c, err)) return kExitUsage;
  const int k = c.k.value_or(4);
  if (k < 3 || k > 16) {
    usage_error(err, "--k must lie in 3..16 for sampling");
    return kExitUsage;
  }
  struct Sample {
    Record record;
    std::optional<Fingerprint> fp;
    Locus locus = Locus::generic;
  };
  const auto samples = parallel_map<Sample>(c.count, c.threads, [&](int i) -> Sample {
    try {
      Rng rng = stream(c.seed, static_cast<std::uint64_t>(i));
      const PuncturedSphereRep rep = sample_point(k, rng, c.tol);
      const LocusLabel label = classify_locus(rep, c.tol);
      Fingerprint fp = fingerprint(rep);
      const double tr = rep.traceless_residual(), pr = rep.product_residual();
      const bool ok = tr <= c.tol.rel && pr <= c.tol.rel;
      Record rec;
      rec.ok = ok;
      if (!ok) rec.failure = "residual above tolerance";
      if (c.format == Format::json) {
        io::json j{{"index", i},
                   {"seed", c.seed},
                   {"k", k},
                   {"locus", to_string(label.locus)},
                   {"rank", label.rank},
                   {"fingerprint_digest", io::hex64(io::fingerprint_digest(fp))},
                   {"fingerprint", fp.values},
                   {"residuals", {{"traceless", tr}, {"product", pr}}},
                   {"rep", io::to_json(rep)}};
        rec.line = j.dump();
      } else {
        rec.line = std::to_string(i) + ',' + std::to_string(k) + ',' + to_string(label.locus) + ',' +
                   std::to_string(label.rank) + ',' + io::hex64(io::fingerprint_digest(fp)) + ',' +
                   io::format_double(tr) + ',' + io::format_double(pr);
      }
      return {std::move(rec), std::move(fp), label.locus};
    } catch (const Error& e) {
      return {failed_record(i, c.seed, e.what()), std::nullopt, Locus::generic};
    }
  });

  std::vector<Record> records;
  std::map<Locus, int> census;
  std::vector<Fingerprint> classes;
  for (const auto& s : samples) {
    records.push_back(s.record);
    if (!s.fp) continue;
    ++census[s.locus];
    if (c.count <= 5000 && std::none_of(classes.begin(), classes.end(), [&](const Fingerprint& f) {
          return fingerprint_equal(f, *s.fp, c.tol.fingerprint);
        }))
      classes.push_back(*s.fp);
  }
  const int failures = emit(records, c.format == Format::csv ? "index,k,locus,rank,fingerprint_digest,"
                                                               "traceless_residual,product_residual"
                                                             : "",
                            out, err, "sample", c.seed);
  err << "sample: k=" << k << " count=" << c.count << " abelian=" << census[Locus::abelian]
      << " binary_dihedral=" << census[Locus::binary_dihedral] << " generic=" << census[Locus::generic];
  if (c.count <= 5000) err << " distinct_classes=" << classes.size();
  err << " failures=" << failures << '\n';
  return failures == 0 ? kExitOk : kExitInvariant;
}

// ---------------------------------------------------------------------------
// cover

inline int cmd_cover(const CampaignConfig& c, std::ostream& out, std::ostream& err) {
  if (!validate_count(c, err)) return kExitUsage;
  if (c.k && *c.k != 6) {
    usage_error(err, "cover works on k = 6");
    return kExitUsage;
  }
  const std::string& sub = c.subaction;
  if (sub != "push" && sub != "extend" && sub != "roundtrip" && sub != "fiber") {
    usage_error(err, "cover needs one of push, extend, roundtrip, fiber");
    return kExitUsage;
  }
  if (c.abelian_points && sub != "fiber") {
    usage_error(err, "--abelian-points applies to cover fiber");
    return kExitUsage;
  }
  if (c.format == Format::csv && sub != "roundtrip" && sub != "fiber") {
    usage_error(err, "csv output is available for roundtrip and fiber");
    return kExitUsage;
  }

  struct Item {
    Record record;
    double residual = 0.0;
    bool on_branch = false;
  };

  std::vector<PuncturedSphereRep> abelian;
  if (c.abelian_points) abelian = abelian_points(3, c.tol);
  const int count = c.abelian_points ? static_cast<int>(abelian.size()) : c.count;

  const auto items = parallel_map<Item>(count, c.threads, [&](int i) -> Item {
    try {
      Rng rng = stream(c.seed, static_cast<std::uint64_t>(i));
      const PuncturedSphereRep rho = c.abelian_points ? abelian[static_cast<std::size_t>(i)] : sample_point(6, rng, c.tol);
      const SurfaceRep s = pushforward(rho, c.tol);
      Item it;
      if (sub == "push") {
        const double r = s.relation_residual();
        it.residual = r;
        it.record.ok = r <= c.tol.rel;
        it.record.line = io::json{{"index", i}, {"source", io::to_json(rho)}, {"surface", io::to_json(s)},
                                  {"relation_residual", r}}
                             .dump();
        return it;
      }
      const PuncturedSphereRep plus = extend(s, 1, c.tol), minus = extend(s, -1, c.tol);
      const double r = std::max(generator_residual(pushforward(plus, c.tol), s),
                                generator_residual(pushforward(minus, c.tol), s));
      it.residual = r;
      it.record.ok = r <= c.tol.roundtrip;
      if (!it.record.ok) it.record.failure = "round trip residual " + io::format_double(r);
      if (sub == "extend") {
        it.record.line = io::json{{"index", i}, {"surface", io::to_json(s)}, {"plus", io::to_json(plus)},
                                  {"minus", io::to_json(minus)}, {"roundtrip_residual", r}}
                             .dump();
      } else if (sub == "roundtrip") {
        it.record.line = c.format == Format::json
                             ? io::json{{"index", i}, {"roundtrip_residual", r}}.dump()
                             : std::to_string(i) + ',' + io::format_double(r);
      } else {
        const FiberReport f = fiber(s, c.tol);
        it.on_branch = f.on_branch;
        if (c.abelian_points && !f.on_branch) {
          it.record.ok = false;
          it.record.failure = "abelian point off the branch locus";
        }
        if (c.format == Format::json) {
          io::json j = io::to_json(f);
          j["index"] = i;
          it.record.line = j.dump();
        } else {
          it.record.line = std::to_string(i) + ',' + (f.on_branch ? "1" : "0") + ',' + std::to_string(f.classes.size());
        }
      }
      return it;
    } catch (const Error& e) {
      return {failed_record(i, c.seed, e.what()), 0.0, false};
    }
  });

  std::vector<Record> records;
  double worst = 0.0;
  int branch = 0;
  for (const auto& it : items) {
    records.push_back(it.record);
    worst = std::max(worst, it.residual);
    if (it.on_branch) ++branch;
  }
  std::string header;
  if (c.format == Format::csv) header = sub == "roundtrip" ? "index,roundtrip_residual" : "index,on_branch,class_count";
  const int failures = emit(records, header, out, err, "cover " + sub, c.seed);
  err << "cover " << sub << ": count=" << count << " max_residual=" << io::format_double(worst);
  if (sub == "fiber")
    err << " branch_fraction=" << io::format_double(static_cast<double>(branch) / static_cast<double>(count));
  err << " failures=" << failures << '\n';
  return failures == 0 ? kExitOk : kExitInvariant;
}

// ---------------------------------------------------------------------------
// morse

/// Flips A(0,1) only; breaks antisymmetry and the Hessian match.
inline IntMatrix faulty_matrix_A(int n) {
  IntMatrix a = matrix_A(n);
  a(0, 1) = -a(0, 1);
  return a;
}

inline HessianReport hessian_report(int n, bool fault) {
  HessianReport r = certify_hessian_combinatorics(n, fault ? std::optional<IntMatrix>(faulty_matrix_A(n)) : std::nullopt);
  certify_hessian_numeric(r, 1e-4);
  return r;
}

inline int cmd_morse(const CampaignConfig& c, std::ostream& out, std::ostream& err) {
  if (!validate_n(c, err)) return kExitUsage;
  if (c.format == Format::csv)
    out << "n,det_A,pfaffian,det_odd,b_squared_identity,eig_positive,eig_negative,fd_max_error\n";
  int failures = 0;
  for (int n = c.n_lo; n <= c.n_hi; ++n) {
    const HessianReport r = hessian_report(n, c.inject_fault == "matrix-a");
    const bool ok = r.exact_ok() && r.numeric_ok(c.tol.fd);
    if (c.format == Format::json) {
      io::json j = io::to_json(r);
      j["pass"] = ok;
      out << j.dump() << '\n';
    } else {
      out << n << ',' << r.det_A.str() << ',' << (r.pfaffian ? r.pfaffian->str() : "") << ',' << r.det_odd << ','
          << r.b_squared_identity_mod2 << ',' << r.eig_positive << ',' << r.eig_negative << ','
          << io::format_double(r.fd_max_error) << '\n';
    }
    if (!ok) {
      ++failures;
      err << "morse: n=" << n << " failed (det odd " << r.det_odd << ", Pf^2=det " << r.pfaffian_squared_is_det
          << ", B^2=I " << r.b_squared_identity_mod2 << ", eig " << r.eig_positive << '/' << r.eig_negative
          << ", fd error " << io::format_double(r.fd_max_error) << ")\n";
    }
  }
  return failures == 0 ? kExitOk : kExitInvariant;
}

// ---------------------------------------------------------------------------
// lemma52

inline const char* to_string(Lemma52Family f) {
  switch (f) {
    case Lemma52Family::surface: return "surface";
    case Lemma52Family::bc: return "bc";
    case Lemma52Family::cd: return "cd";
    case Lemma52Family::da: return "da";
    case Lemma52Family::commuting: return "commuting";
  }
  return "unknown";
}

inline int cmd_lemma52(const CampaignConfig& c, std::ostream& out, std::ostream& err) {
  if (!validate_count(c, err)) return kExitUsage;
  struct Item {
    Record record;
    Lemma52Branch branch = Lemma52Branch::ab;
  };
  const auto items = parallel_map<Item>(c.count, c.threads, [&](int i) -> Item {
    const Lemma52Family family = kLemma52Families[static_cast<std::size_t>(i) % kLemma52Families.size()];
    try {
      Rng rng = stream(c.seed, static_cast<std::uint64_t>(i));
      const Lemma52Input in = sample_lemma52_input(family, rng, c.tol);
      const Lemma52Solution sol = lemma52_solve(in.a, in.b, in.c, in.d, c.tol);
      const auto res = lemma52_residuals(in.a, in.b, in.c, in.d, sol.x);
      const double worst = *std::max_element(res.begin(), res.end());
      Item it;
      it.branch = sol.branch;
      it.record.ok = worst <= c.tol.rel;
      if (!it.record.ok) it.record.failure = "residual " + io::format_double(worst);
      it.record.line = c.format == Format::json
                           ? io::json{{"index", i},
                                      {"family", to_string(family)},
                                      {"branch", to_string(sol.branch)},
                                      {"x", io::to_json(sol.x)},
                                      {"residuals", res}}
                                 .dump()
                           : std::to_string(i) + ',' + to_string(family) + ',' + to_string(sol.branch) + ',' +
                                 io::format_double(worst);
      return it;
    } catch (const Error& e) {
      return {failed_record(i, c.seed, e.what()), Lemma52Branch::ab};
    }
  });
  std::vector<Record> records;
  std::map<Lemma52Branch, int> hits;
  for (const auto& it : items) {
    records.push_back(it.record);
    if (it.record.ok) ++hits[it.branch];
  }
  const int failures =
      emit(records, c.format == Format::csv ? "index,family,branch,max_residual" : "", out, err, "lemma52", c.seed);
  err << "lemma52: count=" << c.count;
  for (auto b : kLemma52Branches) err << ' ' << to_string(b) << '=' << hits[b];
  err << " failures=" << failures << '\n';
  return failures == 0 ? kExitOk : kExitInvariant;
}

// ---------------------------------------------------------------------------
// link-sample

inline int cmd_link_sample(const CampaignConfig& c, std::ostream& out, std::ostream& err) {
  if (!validate_count(c, err) || !validate_n(c, err)) return kExitUsage;
  if (c.n_lo != c.n_hi) {
    usage_error(err, "link-sample takes a single n");
    return kExitUsage;
  }
  const int n = c.n_lo;
  if (c.refine_radius < 0.0 || (c.refine_radius > 0.0 && n != 3)) {
    usage_error(err, "--refine-radius needs n = 3 and a positive radius");
    return kExitUsage;
  }
  const IntMatrix a = matrix_A(n);
  struct Item {
    Record record;
    bool real = false;
  };
  const auto items = parallel_map<Item>(c.count, c.threads, [&](int i) -> Item {
    Rng rng = stream(c.seed, static_cast<std::uint64_t>(i));
    LinkPoint p = sample_link_point(n, a, rng);
    Item it;
    it.real = p.is_real;
    const double q = std::abs(quadric_residual(a, p.zs));
    double norm2 = 0.0;
    for (const auto& z : p.zs) norm2 += std::norm(z);
    it.record.ok = q <= 1e-12 && std::abs(std::sqrt(norm2) - 1.0) <= 1e-12;
    if (!it.record.ok) it.record.failure = "quadric residual " + io::format_double(q);
    if (c.refine_radius > 0.0) {
      auto refined = refine_to_variety(n, p.zs, c.refine_radius);
      if (!refined) {
        it.record.ok = false;
        it.record.failure = "refinement did not converge";
      } else {
        p.zs = std::move(*refined);
      }
    }
    if (c.format == Format::csv) {
      it.record.line = io::link_csv_row(p);
    } else {
      io::json zs = io::json::array();
      for (const auto& z : p.zs) zs.push_back({z.real(), z.imag()});
      it.record.line = io::json{{"index", i}, {"zs", zs}, {"is_real", p.is_real}}.dump();
    }
    return it;
  });
  std::vector<Record> records;
  int real = 0;
  for (const auto& it : items) {
    records.push_back(it.record);
    if (it.real) ++real;
  }
  const int failures =
      emit(records, c.format == Format::csv ? io::link_csv_header(n) : "", out, err, "link-sample", c.seed);
  err << "link-sample: n=" << n << " count=" << c.count << " real_tagged=" << real << " failures=" << failures
      << '\n';
  return failures == 0 ? kExitOk : kExitInvariant;
}

// ---------------------------------------------------------------------------
// selftest

struct Verdict {
  std::string name;
  bool pass = true;
  std::string detail;
};

inline std::vector<Verdict> run_selftest(std::uint64_t seed, const std::string& fault, const Tolerances& tol) {
  std::vector<Verdict> v;
  auto sub = [&](std::uint64_t salt, std::uint64_t i) { return stream(seed ^ (salt * 0x9e3779b97f4a7c15ULL), i); };

  {
    Verdict r{"abelian census: 2^{2n-2} classes for n = 2..5", true, ""};
    for (int n = 2; n <= 5; ++n) {
      const auto pts = abelian_points(n, tol);
      const std::size_t classes = count_distinct_classes(pts, tol.fingerprint);
      if (classes != (std::size_t{1} << (2 * n - 2))) {
        r.pass = false;
        r.detail = "n=" + std::to_string(n) + " gave " + std::to_string(classes);
      }
    }
    v.push_back(r);
  }
  {
    Verdict r{"branched cover: pushforward(extend(rho)) = rho, both lifts", true, ""};
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      Rng rng = sub(1, static_cast<std::uint64_t>(i));
      const SurfaceRep s = surface_sample(rng, tol);
      for (int e : {1, -1}) worst = std::max(worst, generator_residual(pushforward(extend(s, e, tol), tol), s));
    }
    r.pass = worst <= tol.roundtrip;
    r.detail = "max residual " + io::format_double(worst);
    v.push_back(r);
  }
  {
    Verdict r{"two-fold fiber: 2 classes generically, 1 on the binary dihedral locus", true, ""};
    int bad = 0;
    for (int i = 0; i < 100; ++i) {
      Rng rng = sub(2, static_cast<std::uint64_t>(i));
      const PuncturedSphereRep rho = sample_point(6, rng, tol);
      const FiberReport f = fiber(pushforward(rho, tol), tol);
      const Fingerprint a = fingerprint(rho), b = fingerprint(alpha_star(rho, tol));
      const bool match = f.classes.size() == 2 &&
                         ((fingerprint_equal(f.classes[0], a, 1e-6) && fingerprint_equal(f.classes[1], b, 1e-6)) ||
                          (fingerprint_equal(f.classes[0], b, 1e-6) && fingerprint_equal(f.classes[1], a, 1e-6)));
      if (!match) ++bad;
    }
    for (int i = 0; i < 50; ++i) {
      Rng rng = sub(3, static_cast<std::uint64_t>(i));
      std::uniform_real_distribution<double> angle(0.0, kTwoPi);
      TorusCoords t{3, {}};
      for (int l = 0; l < 4; ++l) t.thetas.push_back(angle(rng));
      if (fiber(pushforward(bd_from_torus(t, tol), tol), tol).classes.size() != 1) ++bad;
    }
    r.pass = bad == 0;
    r.detail = std::to_string(bad) + " mismatches";
    v.push_back(r);
  }
  {
    Verdict r{"traceless lift solver: six residuals vanish on valid inputs", true, ""};
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      Rng rng = sub(4, static_cast<std::uint64_t>(i));
      const auto fam = kLemma52Families[static_cast<std::size_t>(i) % kLemma52Families.size()];
      const Lemma52Input in = sample_lemma52_input(fam, rng, tol);
      const auto res = lemma52_residuals(in.a, in.b, in.c, in.d, lemma52_solve(in.a, in.b, in.c, in.d, tol).x);
      worst = std::max(worst, *std::max_element(res.begin(), res.end()));
    }
    r.pass = worst <= tol.rel;
    r.detail = "max residual " + io::format_double(worst);
    v.push_back(r);
  }
  {
    Verdict r{"Hessian exact suite: det A odd, Pf^2 = det, B^2 = I over F2 (n = 2..12)", true, ""};
    for (int n = 2; n <= 12; ++n) {
      const HessianReport h =
          certify_hessian_combinatorics(n, fault == "matrix-a" ? std::optional(faulty_matrix_A(n)) : std::nullopt);
      if (!h.exact_ok()) {
        r.pass = false;
        r.detail = "n=" + std::to_string(n);
        break;
      }
    }
    v.push_back(r);
  }
  {
    Verdict r{"Hessian numeric suite: chart Hessian = (-1)^n [[0,A],[A^T,0]], signature 0 (n = 2..8)", true, ""};
    for (int n = 2; n <= 8; ++n) {
      const HessianReport h = hessian_report(n, fault == "matrix-a");
      if (!h.numeric_ok(tol.fd)) {
        r.pass = false;
        r.detail = "n=" + std::to_string(n) + " fd error " + io::format_double(h.fd_max_error);
        break;
      }
    }
    v.push_back(r);
  }
  {
    Verdict r{"small-k rigidity: R(S^2,3) is a point, R(S^2,4) is binary dihedral", true, ""};
    const Fingerprint ref = fingerprint(make_rep({kI, kJ, -kK}, tol));
    for (int i = 0; i < 50; ++i) {
      Rng rng = sub(5, static_cast<std::uint64_t>(i));
      if (!fingerprint_equal(fingerprint(sample_point(3, rng, tol)), ref, tol.fingerprint)) r.pass = false;
      if (classify_locus(sample_point(4, rng, tol), tol).locus == Locus::generic) r.pass = false;
    }
    v.push_back(r);
  }
  {
    Verdict r{"submersion: f^{-1}(0) is smooth of dimension 2k-6 off the abelian locus", true, ""};
    int bad = 0;
    for (int i = 0; i < 150; ++i) {
      Rng rng = sub(6, static_cast<std::uint64_t>(i));
      const int k = 4 + 2 * (i % 3);
      const PuncturedSphereRep rep = sample_point(k, rng, tol);
      const std::vector<Quaternion> partial(rep.meridians().begin(), rep.meridians().end() - 1);
      const SubmersionCertificate cert = submersion_certificate(partial, tol);
      const double fd = deformation_derivative_fd(partial, cert);
      if (std::abs(cert.derivative) <= 1e-8 || std::abs(fd - cert.derivative) > 1e-6 ||
          local_dimension(rep, tol) != 2 * k - 6)
        ++bad;
    }
    r.pass = bad == 0;
    r.detail = std::to_string(bad) + " failures";
    v.push_back(r);
  }
  {
    Verdict r{"chart symmetries: g(conj z) = -g(z), g invariant under the circle action", true, ""};
    double worst = 0.0;
    for (int n = 2; n <= 6; ++n)
      for (int i = 0; i < 100; ++i) {
        Rng rng = sub(7, static_cast<std::uint64_t>(100 * n + i));
        std::normal_distribution<double> normal;
        std::vector<Complex> zs(static_cast<std::size_t>(2 * n - 2));
        for (auto& z : zs) z = {normal(rng), normal(rng)};
        const double g = eval_chart_g(n, zs);
        worst = std::max(worst, std::abs(eval_chart_g(n, tau(zs)) + g));
        worst = std::max(worst, std::abs(eval_chart_g(n, s1_orbit(zs, normal(rng))) - g));
      }
    r.pass = worst <= 1e-12;
    r.detail = "max deviation " + io::format_double(worst);
    v.push_back(r);
  }
  {
    Verdict r{"binary dihedral torus: coordinates round trip up to theta -> -theta, abelian image", true, ""};
    double worst = 0.0;
    for (int n = 2; n <= 5; ++n)
      for (int i = 0; i < 100; ++i) {
        Rng rng = sub(8, static_cast<std::uint64_t>(100 * n + i));
        std::uniform_real_distribution<double> angle(0.0, kTwoPi);
        TorusCoords t{n, {}};
        for (int l = 0; l < 2 * n - 2; ++l) t.thetas.push_back(angle(rng));
        const TorusCoords back = torus_from_bd(bd_from_torus(t, tol), tol);
        const TorusCoords want = canonical(t);
        for (std::size_t l = 0; l < want.thetas.size(); ++l)
          worst = std::max(worst, angle_distance(want.thetas[l], back.thetas[l]));
        if (n == 3 && !has_abelian_image(pushforward(bd_from_torus(t, tol), tol), 1e-9)) r.pass = false;
      }
    r.pass = r.pass && worst <= 1e-9;
    r.detail = "max angle error " + io::format_double(worst);
    v.push_back(r);
  }
  return v;
}

inline int cmd_selftest(const CampaignConfig& c, std::ostream& out, std::ostream& err) {
  if (!c.inject_fault.empty() && c.inject_fault != "matrix-a") {
    usage_error(err, "unknown fault '" + c.inject_fault + "'");
    return kExitUsage;
  }
  int failures = 0;
  for (const Verdict& v : run_selftest(c.seed, c.inject_fault, c.tol)) {
    out << (v.pass ? "PASS " : "FAIL ") << v.name;
    if (!v.detail.empty()) out << " [" << v.detail << ']';
    out << '\n';
    if (!v.pass) ++failures;
  }
  out << (failures == 0 ? "selftest: all suites passed" : "selftest: " + std::to_string(failures) + " suite(s) failed")
      << '\n';
  return failures == 0 ? kExitOk : kExitInvariant;
}

inline int dispatch(const CampaignConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.command == "sample") return cmd_sample(c, out, err);
    if (c.command == "cover") return cmd_cover(c, out, err);
    if (c.command == "morse") return cmd_morse(c, out, err);
    if (c.command == "lemma52") return cmd_lemma52(c, out, err);
    if (c.command == "link-sample") return cmd_link_sample(c, out, err);
    if (c.command == "selftest") return cmd_selftest(c, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::invalid_argument ? kExitUsage : kExitInvariant;
  }
  usage_error(err, "unknown command '" + c.command + "'");
  return kExitUsage;
}

}  // namespace charvar::cli

#endif  // CHARVAR_CLI_HPP
