// Copyright 2026 The ACE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ace/harness/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <thread>

#include "json.hpp"

namespace ace::harness {

namespace fs = std::filesystem;
using nlohmann::json;

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& job) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

namespace {

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double stddev_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

/// Whole run minus the first second, which only holds pipeline start-up.
Window default_window(const Scenario& s) { return Window{"all", std::min<Time>(kSecond, s.horizon / 2), s.horizon}; }

}  // namespace

std::vector<ProtocolSummary> run_scenario(const Scenario& s, const ScenarioRun& how) {
  std::vector<ProtocolSummary> out;
  for (Protocol p : expand(how.protocol)) {
    ProtocolSummary sum;
    sum.protocol = p;
    sum.runs.resize(how.repetitions);
    RunOptions ro;
    ro.keep_trace = how.keep_traces;
    parallel_for(how.repetitions, how.threads, [&](std::size_t rep) {
      sum.runs[rep] = run_smr(s, p, repetition_seed(how.seed, static_cast<std::uint32_t>(rep)), ro);
    });
    const Window all = default_window(s);
    std::vector<double> tp, lat;
    for (const auto& r : sum.runs) {
      tp.push_back(r.metrics.throughput(all.from, all.to));
      lat.push_back(r.metrics.mean_latency(all.from, all.to));
      sum.violations += r.check.violations.size();
    }
    sum.throughput_mean = mean_of(tp);
    sum.throughput_stddev = stddev_of(tp);
    sum.latency_mean = mean_of(lat);
    sum.latency_stddev = stddev_of(lat);
    for (const auto& w : s.windows) {
      std::vector<double> wt, wl;
      for (const auto& r : sum.runs) {
        wt.push_back(r.metrics.throughput(w.from, w.to));
        wl.push_back(r.metrics.mean_latency(w.from, w.to));
      }
      sum.windows.push_back(WindowStats{w.name, mean_of(wt), mean_of(wl)});
    }
    out.push_back(std::move(sum));
  }
  return out;
}

void write_reports(const std::string& dir, const Scenario& s, const std::vector<ProtocolSummary>& summaries) {
  fs::create_directories(dir);
  std::ofstream csv(fs::path(dir) / "summary.csv");
  csv << "scenario,protocol,repetition,seed,slots_committed,throughput_Bps,mean_latency_ms,mean_rounds,messages,"
         "view_timeouts,violations,trace_hash";
  for (const auto& w : s.windows) csv << ",throughput_" << w.name << ",latency_ms_" << w.name;
  csv << "\n";
  std::ofstream jl(fs::path(dir) / "runs.jsonl");
  const Window all = default_window(s);
  for (const auto& sum : summaries) {
    for (std::size_t rep = 0; rep < sum.runs.size(); ++rep) {
      const auto& r = sum.runs[rep];
      const auto& m = r.metrics;
      char hash[17];
      std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(r.trace_hash));
      csv << s.name << ',' << to_string(r.protocol) << ',' << rep << ',' << r.seed << ',' << m.slots_committed << ','
          << std::fixed << std::setprecision(1) << m.throughput(all.from, all.to) << ','
          << std::setprecision(3) << m.mean_latency(all.from, all.to) / kMillisecond << ',' << m.mean_decision_round
          << ',' << m.messages_sent << ',' << m.view_timeouts << ',' << r.check.violations.size() << ',' << hash;
      for (const auto& w : s.windows)
        csv << ',' << std::setprecision(1) << m.throughput(w.from, w.to) << ',' << std::setprecision(3)
            << m.mean_latency(w.from, w.to) / kMillisecond;
      csv << "\n";

      json line;
      line["scenario"] = s.name;
      line["protocol"] = to_string(r.protocol);
      line["repetition"] = rep;
      line["seed"] = r.seed;
      line["end_time_us"] = r.end_time;
      line["events"] = r.events;
      line["slots_committed"] = m.slots_committed;
      line["throughput_Bps"] = m.throughput(all.from, all.to);
      line["mean_latency_ms"] = m.mean_latency(all.from, all.to) / kMillisecond;
      line["committed_bytes_per_s"] = m.committed_bytes;
      line["mean_rounds_per_decision"] = m.mean_decision_round;
      line["messages_sent"] = m.messages_sent;
      line["bytes_sent"] = m.bytes_sent;
      line["view_timeouts"] = m.view_timeouts;
      line["views_started"] = m.views_started;
      line["proposer_histogram"] = m.proposer_histogram;
      line["trace_hash"] = hash;
      json windows = json::object();
      for (const auto& w : s.windows)
        windows[w.name] = {{"throughput_Bps", m.throughput(w.from, w.to)},
                           {"mean_latency_ms", m.mean_latency(w.from, w.to) / kMillisecond}};
      line["windows"] = windows;
      json viol = json::array();
      for (const auto& v : r.check.violations)
        viol.push_back({{"property", v.property}, {"detail", v.detail}, {"time_us", v.time}});
      line["violations"] = viol;
      jl << line.dump() << "\n";

      if (r.trace) {
        std::ofstream tr(fs::path(dir) / ("trace-" + to_string(r.protocol) + "-" + std::to_string(rep) + ".ndjson"));
        r.trace->write_ndjson(tr);
      }
    }
  }
}

// ---- fuzz -----------------------------------------------------------------

Scenario fuzz_scenario(const FuzzOptions& opts, std::uint64_t run, Protocol& protocol, std::uint64_t& seed) {
  seed = derive_seed(opts.seed, "fuzz-" + std::to_string(run));
  std::mt19937_64 rng(seed);
  auto coin = [&](double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; };
  auto ms = [&](int lo, int hi) { return std::uniform_int_distribution<Duration>(lo, hi)(rng) * kMillisecond; };

  Scenario s;
  if (opts.base) {
    s = *opts.base;
  } else {
    s.name = "fuzz";
    s.config.n = 4;
    s.config.f = 1;
    s.slots = 3;
    s.horizon = 600 * kSecond;
  }
  s.value_bytes = std::min<std::size_t>(s.value_bytes, 256);
  s.config.seed = seed;
  s.delays = sim::DelayModel{};
  s.delays.base = ms(1, 10);
  s.delays.jitter = ms(0, 20);
  s.delays.processing = ms(0, 5);
  s.attack = AttackSpec{};
  s.windows.clear();
  s.stats = StatsSpec{};
  if (coin(0.6)) s.attack.spikes = SpikeSpec{std::uniform_real_distribution<double>(0.0, 0.3)(rng), ms(0, 300)};
  if (coin(0.3)) {
    DdosSpec d;
    d.rule = sim::TargetRule::arbitrary_correct;
    d.added = ms(0, 100);
    d.added_max = d.added + ms(0, 100);
    s.attack.ddos = d;
  }

  protocol = (opts.mutant || coin(0.75)) ? Protocol::ace : Protocol::baseline;
  // Adaptive timers grow until views fit, so baseline runs also terminate.
  s.timeout = TimeoutPolicy{};
  s.timeout.kind = TimeoutKind::adaptive;
  s.timeout.base = ms(50, 400);

  if (!opts.mutant && !opts.base && coin(0.1)) {
    // Crash model: one party stops at a random time.
    s.config.n = 3;
    s.config.f = 1;
    s.config.model = FailureModel::crash;
    s.crash_echo = true;
    s.attack.ddos.reset();
    s.attack.crashes.push_back(
        sim::CrashEvent{std::uniform_int_distribution<PartyId>(0, 2)(rng), ms(0, 2000)});
    return s;
  }

  // Pick up to f byzantine parties with random protocol-shaped deviations.
  std::vector<PartyId> parties(s.config.n);
  for (PartyId p = 0; p < s.config.n; ++p) parties[p] = p;
  std::shuffle(parties.begin(), parties.end(), rng);
  // A base scenario sets the floor: its byzantine count and behavior flags
  // are always present, the rest is randomized on top.
  const AttackSpec floor = (opts.base && !opts.mutant) ? opts.base->attack : AttackSpec{};
  const auto min_faulty = std::max<std::uint32_t>(opts.mutant ? 1 : 0, static_cast<std::uint32_t>(floor.byzantine.size()));
  const auto faulty = std::uniform_int_distribution<std::uint32_t>(std::min(min_faulty, s.config.f), s.config.f)(rng);
  s.attack.byzantine.assign(parties.begin(), parties.begin() + faulty);
  auto& b = s.attack.behavior;
  b.active_from = coin(0.5) ? 0 : ms(0, 500);
  if (opts.mutant) {
    b.fresh_proposals = true;
    s.attack.correct_behavior.skip_safe_node = true;
  } else {
    b.silent_leader = coin(0.5);
    b.equivocate = coin(0.5);
    b.bogus_shares = coin(0.5);
    b.fresh_proposals = coin(0.25);
    b.stale_certs = coin(0.25);
    b.forge_certs = coin(0.25);
    b.invalid_proposals = coin(0.15);
    if (coin(0.3)) s.attack.drop = std::uniform_real_distribution<double>(0.1, 0.6)(rng);
  }
  const Behavior& fb = floor.behavior;
  b.silent_leader |= fb.silent_leader;
  b.equivocate |= fb.equivocate;
  b.bogus_shares |= fb.bogus_shares;
  b.fresh_proposals |= fb.fresh_proposals;
  b.stale_certs |= fb.stale_certs;
  b.forge_certs |= fb.forge_certs;
  b.invalid_proposals |= fb.invalid_proposals;
  s.attack.drop = std::max(s.attack.drop, floor.drop);
  return s;
}

FuzzOutcome fuzz(const FuzzOptions& opts) {
  FuzzOutcome out;
  out.runs = opts.runs;
  struct Slot {
    CheckReport report;
    std::string protocol;
    std::uint64_t seed = 0;
  };
  std::vector<Slot> results(opts.runs);
  parallel_for(opts.runs, opts.threads, [&](std::size_t i) {
    Protocol p;
    std::uint64_t seed;
    const Scenario s = fuzz_scenario(opts, i, p, seed);
    results[i].protocol = to_string(p);
    results[i].seed = seed;
    if (opts.mutant) {
      // Single agreement over many waves so that a later wave can overturn
      // an earlier decision.
      results[i].report = run_single_shot(s, p, seed, 40, false).check;
    } else {
      results[i].report = run_smr(s, p, seed).check;
    }
  });
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i].report;
    out.waves_checked += r.waves_checked;
    out.waves_complete += r.waves_complete;
    out.halting_slots += r.halting_slots_checked;
    out.barriers_checked += r.barriers_checked;
    if (r.ok()) continue;
    ++out.failed_runs;
    out.findings.push_back(FuzzFinding{i, results[i].seed, results[i].protocol, r.violations.front()});
  }
  if (!out.findings.empty() && !opts.out_dir.empty()) {
    // Replay the first failing run with a full trace.
    const auto& first = out.findings.front();
    Protocol p;
    std::uint64_t seed;
    const Scenario s = fuzz_scenario(opts, first.run, p, seed);
    fs::create_directories(opts.out_dir);
    const auto path = fs::path(opts.out_dir) / ("fuzz-failure-" + std::to_string(first.run) + ".ndjson");
    std::ofstream tr(path);
    RunOptions ro;
    ro.trace_level = sim::TraceLevel::full;
    ro.keep_trace = true;
    if (opts.mutant) {
      // run_single_shot does not keep traces; record the SMR form instead.
      Scenario one = s;
      one.slots = 1;
      auto r = run_smr(one, p, seed, ro);
      r.trace->write_ndjson(tr);
    } else {
      auto r = run_smr(s, p, seed, ro);
      r.trace->write_ndjson(tr);
    }
    out.trace_path = path.string();
  }
  return out;
}

// ---- stats ----------------------------------------------------------------

std::uint64_t required_trials(double variance, double margin) {
  if (margin <= 0.0) return std::numeric_limits<std::uint64_t>::max();
  // The epsilon keeps exact quotients such as 400.0000001 from rounding up.
  return static_cast<std::uint64_t>(std::ceil(4.0 * variance / (margin * margin) - 1e-9));
}

StatsOutcome compute_stats(const Scenario& s, std::uint64_t seed, std::uint64_t trials_override, unsigned threads) {
  StatsOutcome o;
  const auto& st = s.stats;
  o.statistic = st.statistic;
  o.trials = trials_override != 0 ? trials_override : st.trials;
  o.threshold = st.threshold;
  const double n = s.config.n;
  const double f = s.config.f;
  const double p = (f + 1.0) / n;

  switch (st.statistic) {
    case Statistic::none:
      throw ConfigError("scenario does not designate a statistic");
    case Statistic::decision_rate: {
      o.bound = p;
      o.required = required_trials(p * (1 - p), p - st.threshold);
      if (o.trials < o.required) return o;
      const std::uint64_t per_run = st.rounds_per_run == 0 ? 100 : st.rounds_per_run;
      const std::uint64_t runs = (o.trials + per_run - 1) / per_run;
      std::vector<SingleShotResult> res(runs);
      parallel_for(runs, threads, [&](std::size_t i) {
        res[i] = run_single_shot(s, Protocol::ace, repetition_seed(seed, static_cast<std::uint32_t>(i)), per_run, false);
      });
      std::uint64_t waves = 0, decided = 0;
      for (const auto& r : res) {
        o.violations += r.check.violations.size();
        o.waves_checked += r.check.waves_checked;
        o.waves_complete += r.check.waves_complete;
        for (const auto& [round, ok] : r.round_outcomes) {
          ++waves;
          decided += ok ? 1 : 0;
        }
      }
      o.trials = waves;
      o.estimate = waves ? static_cast<double>(decided) / static_cast<double>(waves) : 0.0;
      o.stderr_ = std::sqrt(o.estimate * (1 - o.estimate) / std::max<double>(1.0, static_cast<double>(waves)));
      o.sufficient = waves >= o.required;
      o.pass = o.sufficient && o.violations == 0 && o.estimate >= st.threshold;
      return o;
    }
    case Statistic::mean_waves: {
      o.bound = 1.0 / p;
      o.required = required_trials((1 - p) / (p * p), st.threshold - o.bound);
      if (o.trials < o.required) return o;
      std::vector<SingleShotResult> res(o.trials);
      parallel_for(o.trials, threads, [&](std::size_t i) {
        res[i] = run_single_shot(s, Protocol::ace, repetition_seed(seed, static_cast<std::uint32_t>(i)), 0, true);
      });
      std::vector<double> waves;
      for (const auto& r : res) {
        o.violations += r.check.violations.size();
        o.waves_checked += r.check.waves_checked;
        o.waves_complete += r.check.waves_complete;
        if (r.universal_round > 0) waves.push_back(static_cast<double>(r.universal_round));
      }
      o.trials = waves.size();
      o.estimate = mean_of(waves);
      o.stderr_ = waves.empty() ? 0.0 : stddev_of(waves) / std::sqrt(static_cast<double>(waves.size()));
      o.sufficient = o.trials >= o.required;
      o.pass = o.sufficient && o.violations == 0 && o.estimate <= st.threshold;
      return o;
    }
    case Statistic::fairness: {
      const double q = st.correct_only ? 0.5 : 1.0 / n;
      o.bound = q;
      o.required = required_trials(q * (1 - q), st.correct_only ? q - st.threshold : st.tolerance);
      if (o.trials < o.required) return o;
      Scenario run = s;
      run.slots = o.trials;
      const auto r = run_smr(run, Protocol::ace, seed);
      o.violations = r.check.violations.size();
      const auto& h = r.metrics.proposer_histogram;
      std::uint64_t total = 0, from_correct = 0;
      sim::SimConfig sc = sim_config(run, seed);
      std::vector<bool> byz(s.config.n, false);
      for (PartyId b : sc.byzantine) byz[b] = true;
      for (PartyId i = 0; i < h.size(); ++i) {
        total += h[i];
        if (!byz[i]) from_correct += h[i];
      }
      for (PartyId i = 0; i < h.size(); ++i)
        o.fractions.push_back(total ? static_cast<double>(h[i]) / static_cast<double>(total) : 0.0);
      o.trials = total;
      o.sufficient = total >= o.required;
      if (st.correct_only) {
        o.estimate = total ? static_cast<double>(from_correct) / static_cast<double>(total) : 0.0;
        o.pass = o.sufficient && o.violations == 0 && o.estimate >= st.threshold;
      } else {
        double worst = 0.0;
        for (double x : o.fractions) worst = std::max(worst, std::abs(x - q));
        o.estimate = worst;
        o.pass = o.sufficient && o.violations == 0 && worst <= st.tolerance;
      }
      o.stderr_ = std::sqrt(q * (1 - q) / std::max<double>(1.0, static_cast<double>(total)));
      return o;
    }
  }
  return o;
}

// ---- CLI entry points ------------------------------------------------------

namespace {

std::uint64_t resolve_seed(const CommonFlags& flags, const Scenario& s) {
  return flags.seed ? *flags.seed : s.config.seed;
}

void print_summary(std::ostream& out, const Scenario& s, const std::vector<ProtocolSummary>& sums) {
  out << std::fixed;
  for (const auto& sum : sums) {
    out << s.name << " [" << to_string(sum.protocol) << "] repetitions=" << sum.runs.size() << std::setprecision(1)
        << " throughput=" << sum.throughput_mean << "+-" << sum.throughput_stddev << " B/s"
        << std::setprecision(2) << " latency=" << sum.latency_mean / kMillisecond << "+-"
        << sum.latency_stddev / kMillisecond << " ms violations=" << sum.violations << "\n";
    for (const auto& w : sum.windows)
      out << "  window " << w.name << std::setprecision(1) << ": throughput=" << w.throughput << " B/s"
          << std::setprecision(2) << " latency=" << w.latency / kMillisecond << " ms\n";
    for (const auto& r : sum.runs)
      for (const auto& v : r.check.violations)
        out << "  VIOLATION seed=" << r.seed << " " << v.property << ": " << v.detail << "\n";
  }
}

}  // namespace

int cmd_run(const CommonFlags& flags, std::ostream& out, std::ostream&) {
  Scenario s = load_scenario(flags.scenario);
  ScenarioRun how;
  how.seed = resolve_seed(flags, s);
  how.repetitions = flags.repetitions.value_or(s.repetitions);
  how.protocol = flags.protocol ? parse_protocol_choice(*flags.protocol) : s.protocol;
  how.keep_traces = flags.trace;
  how.threads = flags.threads;
  if (flags.trace && s.trace_level == sim::TraceLevel::lifecycle) s.trace_level = sim::TraceLevel::messages;
  const auto sums = run_scenario(s, how);
  print_summary(out, s, sums);
  if (!flags.out_dir.empty()) {
    write_reports(flags.out_dir, s, sums);
    out << "reports written to " << flags.out_dir << "\n";
  }
  for (const auto& sum : sums)
    if (sum.violations) return kExitViolation;
  return kExitOk;
}

int cmd_compare(const CommonFlags& flags, std::ostream& out, std::ostream& err) {
  Scenario s = load_scenario(flags.scenario);
  ScenarioRun how;
  how.seed = resolve_seed(flags, s);
  how.repetitions = flags.repetitions.value_or(s.repetitions);
  how.protocol = ProtocolChoice::both;
  if (flags.protocol && parse_protocol_choice(*flags.protocol) != ProtocolChoice::both)
    err << "compare always runs both protocols; ignoring --protocol\n";
  how.threads = flags.threads;
  how.keep_traces = flags.trace;
  const auto sums = run_scenario(s, how);
  print_summary(out, s, sums);
  const auto& a = sums[0];
  const auto& b = sums[1];
  out << std::setprecision(3) << "ratio ace/baseline throughput="
      << (b.throughput_mean > 0 ? a.throughput_mean / b.throughput_mean : INFINITY) << "\n";
  for (std::size_t i = 0; i < s.windows.size(); ++i) {
    const auto& wa = a.windows[i];
    const auto& wb = b.windows[i];
    out << "  window " << wa.name << ": ace=" << std::setprecision(1) << wa.throughput
        << " B/s baseline=" << wb.throughput << " B/s\n";
  }
  if (!flags.out_dir.empty()) {
    write_reports(flags.out_dir, s, sums);
    std::ofstream csv(fs::path(flags.out_dir) / "compare.csv");
    csv << "window,ace_throughput_Bps,baseline_throughput_Bps,ace_latency_ms,baseline_latency_ms\n";
    csv << std::fixed << std::setprecision(3);
    csv << "all," << a.throughput_mean << ',' << b.throughput_mean << ',' << a.latency_mean / kMillisecond << ','
        << b.latency_mean / kMillisecond << "\n";
    for (std::size_t i = 0; i < s.windows.size(); ++i)
      csv << a.windows[i].name << ',' << a.windows[i].throughput << ',' << b.windows[i].throughput << ','
          << a.windows[i].latency / kMillisecond << ',' << b.windows[i].latency / kMillisecond << "\n";
  }
  return (a.violations || b.violations) ? kExitViolation : kExitOk;
}

int cmd_fuzz(const CommonFlags& flags, std::ostream& out, std::ostream&) {
  FuzzOptions opts;
  opts.runs = flags.runs;
  opts.mutant = flags.mutant;
  opts.out_dir = flags.out_dir;
  opts.threads = flags.threads;
  if (!flags.scenario.empty()) opts.base = load_scenario(flags.scenario);
  opts.seed = flags.seed ? *flags.seed : (opts.base ? opts.base->config.seed : 1);
  const auto o = fuzz(opts);
  out << "fuzz runs=" << o.runs << " failed=" << o.failed_runs << " barriers=" << o.barriers_checked
      << " waves=" << o.waves_checked << " complete_waves=" << o.waves_complete << " halted_slots=" << o.halting_slots
      << (opts.mutant ? " (mutant: correct parties skip the voting rule)" : "") << "\n";
  std::size_t shown = 0;
  for (const auto& fnd : o.findings) {
    if (++shown > 20) break;
    out << "  run " << fnd.run << " seed=" << fnd.seed << " protocol=" << fnd.protocol << " "
        << fnd.violation.property << ": " << fnd.violation.detail << "\n";
  }
  if (!o.trace_path.empty()) out << "first failing run traced to " << o.trace_path << "\n";
  return o.failed_runs ? kExitViolation : kExitOk;
}

int cmd_stats(const CommonFlags& flags, std::ostream& out, std::ostream& err) {
  const Scenario s = load_scenario(flags.scenario);
  const auto o = compute_stats(s, resolve_seed(flags, s), flags.trials, flags.threads);
  out << std::fixed << std::setprecision(4);
  out << s.name << " statistic=" << to_string(o.statistic) << " trials=" << o.trials << " required=" << o.required;
  if (o.trials < o.required && o.estimate == 0.0 && o.fractions.empty()) {
    out << "\n";
    err << "insufficient trials: " << o.trials << " < " << o.required << " for the configured margin\n";
    return kExitInsufficient;
  }
  out << " estimate=" << o.estimate << " stderr=" << o.stderr_ << " bound=" << o.bound
      << " threshold=" << o.threshold << " violations=" << o.violations;
  if (!o.fractions.empty()) {
    out << " fractions=";
    for (std::size_t i = 0; i < o.fractions.size(); ++i) out << (i ? "," : "") << o.fractions[i];
  }
  out << " verdict=" << (o.pass ? "pass" : "fail") << "\n";
  if (!o.sufficient) {
    err << "insufficient data: only " << o.trials << " usable trials, " << o.required << " required\n";
    return kExitInsufficient;
  }
  if (o.violations) return kExitViolation;
  return o.pass ? kExitOk : kExitViolation;
}

}  // namespace ace::harness
