#include "cli/app.h"

#include "cli/digest.h"
#include "cli/manifest.h"
#include "mftk/correl.h"
#include "mftk/error.h"
#include "mftk/ingest.h"
#include "mftk/mfdfa.h"
#include "mftk/returns_io.h"
#include "mftk/rng.h"
#include "mftk/spectrum.h"
#include "mftk/surrogate.h"
#include "mftk/synth.h"
#include "mftk/tables.h"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <optional>

#ifndef MFTK_VERSION
#define MFTK_VERSION "0.0.0"
#endif

namespace mftk::cli {

namespace {

namespace fs = std::filesystem;

constexpr const char* kVersion = MFTK_VERSION;
constexpr std::size_t kMaxWarningsShown = 20;

// ---------------------------------------------------------------------------
// value parsing

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string::size_type start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return parts;
}

double parse_double(const std::string& text, const std::string& what) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end) throw InputError(what + ": '" + text + "' is not a number");
    return v;
}

std::size_t parse_size(const std::string& text, const std::string& what) {
    std::size_t v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end) throw InputError(what + ": '" + text + "' is not a non-negative integer");
    return v;
}

}  // namespace

std::vector<double> parse_q_grid(const std::string& text) {
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) throw InputError("--q-grid: expected LO:HI:STEP, got '" + text + "'");
        return mfdfa::make_q_grid(parse_double(parts[0], "--q-grid"), parse_double(parts[1], "--q-grid"),
                                  parse_double(parts[2], "--q-grid"));
    }
    std::vector<double> q;
    for (const auto& p : split(text, ',')) q.push_back(parse_double(p, "--q-grid"));
    return q;
}

std::vector<std::size_t> parse_scales(const std::string& text) {
    if (text.empty()) return {};
    const auto parts = split(text, ':');
    if (parts[0] == "log") {
        if (parts.size() != 4) throw InputError("--scales: expected log:LO:HI:COUNT");
        return mfdfa::log_scale_grid(parse_size(parts[1], "--scales"), parse_size(parts[2], "--scales"),
                                     parse_size(parts[3], "--scales"));
    }
    if (parts[0] == "dyadic") {
        if (parts.size() != 3) throw InputError("--scales: expected dyadic:LO:HI");
        const auto lo = parse_size(parts[1], "--scales");
        const auto hi = parse_size(parts[2], "--scales");
        std::vector<std::size_t> s;
        for (std::size_t v = 1; v <= hi; v *= 2)
            if (v >= lo) s.push_back(v);
        if (s.empty()) throw InputError("--scales: no power of two in [" + parts[1] + ", " + parts[2] + "]");
        return s;
    }
    if (parts.size() != 1) throw InputError("--scales: unknown form '" + text + "'");
    std::vector<std::size_t> s;
    for (const auto& p : split(text, ',')) s.push_back(parse_size(p, "--scales"));
    return s;
}

namespace {

template <typename Seq>
std::string join_numbers(const Seq& values) {
    std::string out;
    for (const auto& v : values) {
        if (!out.empty()) out += ',';
        if constexpr (std::is_floating_point_v<std::decay_t<decltype(v)>>)
            out += io::format_double(v);
        else
            out += std::to_string(v);
    }
    return out;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------------------
// shared plumbing

struct Streams {
    std::ostream& out;
    std::ostream& err;
};

void report_warnings(std::ostream& err, const std::vector<std::string>& warnings) {
    for (std::size_t i = 0; i < warnings.size() && i < kMaxWarningsShown; ++i) err << "warning: " << warnings[i] << '\n';
    if (warnings.size() > kMaxWarningsShown)
        err << "warning: ... " << warnings.size() - kMaxWarningsShown << " more (see manifest)\n";
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
    return out;
}

fs::path with_suffix(const fs::path& base, const std::string& suffix) { return fs::path(base.string() + suffix); }

// Deterministic part of the provenance that goes into every table header.
struct Provenance {
    RunManifest manifest;
    io::ConfigEcho echo;  // excludes output paths and worker counts

    Provenance(std::string command) {
        manifest.tool_version = kVersion;
        manifest.command = std::move(command);
        manifest.started_utc = utc_timestamp();
        echo.emplace_back("tool", std::string("mftk ") + kVersion);
        echo.emplace_back("command", manifest.command);
    }

    void input(const fs::path& path, const std::string& key = "input_sha256") {
        const auto digest = sha256_file(path);
        manifest.inputs.push_back({path.string(), digest});
        echo.emplace_back(key, digest);
    }

    void set(const std::string& key, std::string value) { echo.emplace_back(key, std::move(value)); }

    void seed(std::uint64_t s) {
        manifest.seeds.push_back(s);
        echo.emplace_back("seed", std::to_string(s));
        echo.emplace_back("rng", kRngAlgorithm);
    }

    void output(const fs::path& path) { manifest.outputs.push_back({path.string(), ""}); }

    io::Comments comments() const { return io::config_comments(echo); }

    void finish(const fs::path& manifest_path, const std::vector<std::pair<std::string, std::string>>& runtime,
                const std::vector<std::string>& warnings) {
        manifest.config = echo;
        for (const auto& kv : runtime) manifest.config.push_back(kv);
        manifest.warnings = warnings;
        write_manifest(manifest_path, manifest);
    }
};

// ---------------------------------------------------------------------------
// MF-DFA options shared by analyze and surrogate

struct MfdfaOptions {
    std::string q_grid = "-5:5:0.25";
    std::string scales;
    int order = 5;
    bool both_ends = true;
    std::size_t fit_min = 0;
    std::size_t fit_max = 0;
};

void add_mfdfa_options(CLI::App& cmd, MfdfaOptions& o) {
    cmd.add_option("--q-grid", o.q_grid, "Moment orders: LO:HI:STEP or a comma list")->capture_default_str();
    cmd.add_option("--scales", o.scales,
                   "Window sizes: log:LO:HI:COUNT, dyadic:LO:HI or a comma list "
                   "(default: 30 log-spaced sizes from 16 to N/4)");
    cmd.add_option("--order", o.order, "Detrending polynomial order")->capture_default_str()->check(CLI::Range(0, 12));
    cmd.add_option("--both-ends", o.both_ends, "Also segment from the end of the profile")->capture_default_str();
    cmd.add_option("--fit-min", o.fit_min, "Smallest window size in the h(q) fit (0: smallest on the grid)");
    cmd.add_option("--fit-max", o.fit_max, "Largest window size in the h(q) fit (0: largest on the grid)");
}

mfdfa::MfdfaConfig resolve_mfdfa(const MfdfaOptions& o, std::size_t n, std::size_t jobs) {
    mfdfa::MfdfaConfig c;
    c.q_grid = parse_q_grid(o.q_grid);
    c.scale_grid = parse_scales(o.scales);
    c.poly_order = o.order;
    c.both_ends = o.both_ends;
    if (o.fit_min > 0) c.fit_min_scale = o.fit_min;
    if (o.fit_max > 0) c.fit_max_scale = o.fit_max;
    c.jobs = jobs;
    return mfdfa::resolve_config(std::move(c), n);
}

void echo_mfdfa(Provenance& p, const mfdfa::MfdfaConfig& c) {
    p.set("q_grid", join_numbers(c.q_grid));
    p.set("scales", join_numbers(c.scale_grid));
    p.set("poly_order", std::to_string(c.poly_order));
    p.set("both_ends", yes_no(c.both_ends));
    p.set("fit_min_scale", c.fit_min_scale ? std::to_string(*c.fit_min_scale) : "auto");
    p.set("fit_max_scale", c.fit_max_scale ? std::to_string(*c.fit_max_scale) : "auto");
}

// ---------------------------------------------------------------------------
// ingest

struct IngestOptions {
    std::string input;
    std::string output;
    char delimiter = ',';
    std::string timestamp_format = "%Y-%m-%dT%H:%M:%S";
    std::string timezone = "Europe/Madrid";
    std::size_t timestamp_column = 0;
    std::size_t price_column = 1;
    bool header = false;
    bool strict = false;
    long reorder_tolerance = 0;
    std::string open = "09:00:00";
    std::string close = "17:30:00";
    long cutoff = 30;
    long interval = 15;
};

int cmd_ingest(const IngestOptions& o, Streams io_) {
    Provenance p("ingest");
    p.input(o.input);

    ingest::FormatConfig format;
    format.delimiter = o.delimiter;
    format.timestamp_format = o.timestamp_format;
    format.timezone = o.timezone;
    format.timestamp_column = o.timestamp_column;
    format.price_column = o.price_column;
    format.has_header = o.header;
    format.strict = o.strict;
    format.reorder_tolerance = std::chrono::seconds(o.reorder_tolerance);
    ingest::SessionConfig session;
    session.open = ingest::parse_time_of_day(o.open);
    session.close = ingest::parse_time_of_day(o.close);
    session.closing_cutoff = std::chrono::seconds(o.cutoff);

    p.set("delimiter", std::string(1, o.delimiter));
    p.set("timestamp_format", o.timestamp_format);
    p.set("timezone", o.timezone);
    p.set("timestamp_column", std::to_string(o.timestamp_column));
    p.set("price_column", std::to_string(o.price_column));
    p.set("header", yes_no(o.header));
    p.set("strict", yes_no(o.strict));
    p.set("reorder_tolerance_s", std::to_string(o.reorder_tolerance));
    p.set("session_open", ingest::format_time_of_day(session.open));
    p.set("session_close", ingest::format_time_of_day(session.close));
    p.set("closing_cutoff_s", std::to_string(o.cutoff));
    p.set("interval_s", std::to_string(o.interval));

    std::ifstream in(o.input);
    if (!in) throw InputError("cannot open '" + o.input + "' for reading");
    const auto ticks = ingest::parse_ticks(in, format, session);
    const auto grid = ingest::resample(ticks, std::chrono::seconds(o.interval));
    std::vector<std::string> warnings = ticks.warnings;
    warnings.insert(warnings.end(), grid.warnings.begin(), grid.warnings.end());
    const auto returns = ingest::log_returns(grid, &warnings);
    if (returns.days.empty()) throw InputError("ingest: no trading day produced any return");

    io::write_returns_file(o.output, returns, p.comments());
    p.output(o.output);
    p.finish(with_suffix(o.output, ".manifest.json"), {}, warnings);

    report_warnings(io_.err, warnings);
    io_.out << "days: " << returns.days.size() << '\n' << "returns: " << returns.size() << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateOptions {
    std::string model;
    std::string output;
    std::optional<std::uint64_t> seed;
    std::size_t n = 65536;
    double sigma = 1.0;
    double hurst = 0.5;
    double multiplier = 0.6;
    unsigned levels = 16;
    bool randomize = false;
    std::size_t day_length = 2048;
    int interval = 15;
};

int cmd_generate(const GenerateOptions& o, Streams io_) {
    if (!o.seed) throw InputError("generate: --seed is required");
    if (o.day_length == 0) throw InputError("generate: --day-length must be positive");
    Provenance p("generate");
    p.set("model", o.model);
    std::vector<double> values;
    if (o.model == "iid") {
        p.set("n", std::to_string(o.n));
        p.set("sigma", io::format_double(o.sigma));
        values = synth::generate_gaussian_iid(o.n, o.sigma, *o.seed);
    } else if (o.model == "fgn") {
        p.set("n", std::to_string(o.n));
        p.set("sigma", io::format_double(o.sigma));
        p.set("hurst", io::format_double(o.hurst));
        values = synth::generate_fgn({o.hurst, o.n, o.sigma, *o.seed});
    } else if (o.model == "cascade") {
        p.set("multiplier", io::format_double(o.multiplier));
        p.set("levels", std::to_string(o.levels));
        p.set("randomize_placement", yes_no(o.randomize));
        values = synth::generate_binomial_cascade({o.multiplier, o.levels, *o.seed, o.randomize});
    } else {
        throw InputError("generate: unknown model '" + o.model + "' (iid|fgn|cascade)");
    }
    p.set("day_length", std::to_string(o.day_length));
    p.set("interval_s", std::to_string(o.interval));
    p.seed(*o.seed);

    const auto series = partition_into_days(values, o.day_length, o.interval);
    io::write_returns_file(o.output, series, p.comments());
    p.output(o.output);
    p.finish(with_suffix(o.output, ".manifest.json"), {}, {});
    io_.out << "days: " << series.days.size() << '\n' << "returns: " << series.size() << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeOptions {
    std::string input;
    std::string prefix;
    MfdfaOptions mfdfa;
    std::size_t envelope_points = 201;
    std::size_t jobs = 1;
};

int cmd_analyze(const AnalyzeOptions& o, Streams io_) {
    Provenance p("analyze");
    p.input(o.input);
    const auto series = io::read_returns_file(o.input);
    const auto flat = series.flatten();
    const auto config = resolve_mfdfa(o.mfdfa, flat.size(), o.jobs);
    p.set("n", std::to_string(flat.size()));
    echo_mfdfa(p, config);
    p.set("envelope_points", std::to_string(o.envelope_points));

    const auto analysis = mfdfa::analyze(flat, config);
    std::vector<std::string> warnings = analysis.exponents.warnings;
    const auto spec = spectrum::legendre_points(analysis.exponents);
    warnings.insert(warnings.end(), spec.warnings.begin(), spec.warnings.end());
    const auto env = spectrum::envelope(analysis.exponents.q, analysis.exponents.tau,
                                        spectrum::envelope_alpha_samples(spec, o.envelope_points));
    std::optional<double> d;
    if (analysis.exponents.all_ok()) d = surrogate::d_statistic(analysis.exponents);

    const auto comments = p.comments();
    const fs::path prefix(o.prefix);
    const auto write_table = [&](const std::string& suffix, auto&& writer) {
        const auto path = with_suffix(prefix, suffix);
        auto out = open_output(path);
        writer(out);
        p.output(path);
    };
    write_table(".exponents.csv", [&](std::ostream& s) { io::write_exponents_csv(s, analysis.exponents, comments); });
    write_table(".fluctuation.csv", [&](std::ostream& s) { io::write_fluctuation_csv(s, analysis.surface, comments); });
    write_table(".spectrum.csv", [&](std::ostream& s) { io::write_spectrum_csv(s, spec, comments); });
    write_table(".envelope.csv", [&](std::ostream& s) { io::write_envelope_csv(s, env, comments); });
    write_table(".summary.json", [&](std::ostream& s) {
        nlohmann::ordered_json j;
        j["config"] = io::to_json(p.echo);
        j["spectrum"] = io::to_json(spec.summary);
        j["d_statistic"] = d ? nlohmann::ordered_json(*d) : nlohmann::ordered_json(nullptr);
        j["nonconcave_q"] = spec.nonconcave_q;
        j["warnings"] = warnings;
        s << j.dump(2) << '\n';
    });
    p.finish(with_suffix(prefix, ".manifest.json"), {{"jobs", std::to_string(o.jobs)}}, warnings);

    report_warnings(io_.err, warnings);
    const auto& s = spec.summary;
    io_.out << "n: " << flat.size() << '\n'
            << "alpha_min: " << io::format_double(s.alpha_min) << '\n'
            << "alpha_max: " << io::format_double(s.alpha_max) << '\n'
            << "alpha0: " << io::format_double(s.alpha0) << '\n'
            << "width: " << io::format_double(s.width) << '\n'
            << "f_max: " << io::format_double(s.f_max) << '\n';
    if (d) io_.out << "d: " << io::format_double(*d) << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// surrogate

struct SurrogateOptions {
    std::string input;
    std::string output;
    std::string ensemble_csv;
    std::string kind;
    std::size_t ensemble_size = 10000;
    std::optional<std::uint64_t> seed;
    MfdfaOptions mfdfa;
    std::size_t jobs = 1;
};

int cmd_surrogate(const SurrogateOptions& o, Streams io_) {
    if (!o.seed) throw InputError("surrogate: --seed is required");
    Provenance p("surrogate");
    p.input(o.input);
    const auto kind = surrogate::parse_shuffle_kind(o.kind);
    const auto series = io::read_returns_file(o.input);
    const auto config = resolve_mfdfa(o.mfdfa, series.size(), 1);
    p.set("n", std::to_string(series.size()));
    p.set("days", std::to_string(series.days.size()));
    echo_mfdfa(p, config);
    p.set("kind", surrogate::to_string(kind));
    p.set("ensemble_size", std::to_string(o.ensemble_size));
    p.seed(*o.seed);

    const auto report = surrogate::surrogate_test(series, kind, o.ensemble_size, config, *o.seed, o.jobs);

    {
        auto out = open_output(o.output);
        nlohmann::ordered_json j;
        j["config"] = io::to_json(p.echo);
        j["report"] = io::to_json(report);
        out << j.dump(2) << '\n';
        p.output(o.output);
    }
    if (!o.ensemble_csv.empty()) {
        auto out = open_output(o.ensemble_csv);
        io::write_ensemble_csv(out, report.d_ensemble, p.comments());
        p.output(o.ensemble_csv);
    }
    p.finish(with_suffix(o.output, ".manifest.json"), {{"jobs", std::to_string(o.jobs)}}, report.failure_messages);

    report_warnings(io_.err, report.failure_messages);
    io_.out << "d_observed: " << io::format_double(report.d_observed) << '\n'
            << "ensemble: " << report.d_ensemble.size() << " of " << report.requested << '\n'
            << "p_value: " << report.p_value_display() << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// acf

struct AcfOptions {
    std::string input;
    std::string output;
    std::string peaks_output;
    std::string transform = "raw";
    std::size_t max_lag = 0;
    std::size_t day_length = 0;
    bool exclude_cross_day = false;
};

int cmd_acf(const AcfOptions& o, Streams io_) {
    Provenance p("acf");
    p.input(o.input);
    const auto transform = correl::parse_transform(o.transform);
    const auto series = io::read_returns_file(o.input);
    const std::size_t n = series.size();
    if (n < 4) throw InputError("acf: need at least 4 returns");
    const std::size_t day = o.day_length > 0 ? o.day_length : series.days.front().returns.size();

    std::vector<std::string> warnings;
    std::size_t max_lag = o.max_lag > 0 ? o.max_lag : 30 * day;
    const std::size_t limit = (n - 1) / 2;
    if (o.max_lag == 0 && max_lag > limit) {
        warnings.push_back("default max lag " + std::to_string(max_lag) + " exceeds N/2; using " +
                           std::to_string(limit));
        max_lag = limit;
    }
    p.set("transform", correl::to_string(transform));
    p.set("max_lag", std::to_string(max_lag));
    p.set("day_length", std::to_string(day));
    p.set("exclude_cross_day", yes_no(o.exclude_cross_day));

    const auto c = correl::acf(series, max_lag, transform, o.exclude_cross_day);
    {
        auto out = open_output(o.output);
        io::write_correlogram_csv(out, c, p.comments());
        p.output(o.output);
    }
    if (!o.peaks_output.empty()) {
        const auto peaks = correl::daily_pattern(c, day);
        auto out = open_output(o.peaks_output);
        io::write_daily_peaks_csv(out, peaks, p.comments());
        p.output(o.peaks_output);
    }
    p.finish(with_suffix(o.output, ".manifest.json"), {}, warnings);

    report_warnings(io_.err, warnings);
    const std::size_t hi = std::min<std::size_t>(100, c.max_lag());
    io_.out << "n: " << c.n << '\n'
            << "band: " << io::format_double(c.band) << '\n'
            << "outside_band_lags_1_" << hi << ": " << io::format_double(correl::fraction_outside_band(c, 1, hi))
            << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// profile

struct ProfileOptions {
    std::string input;
    std::string output;
};

int cmd_profile(const ProfileOptions& o, Streams io_) {
    Provenance p("profile");
    p.input(o.input);
    const auto series = io::read_returns_file(o.input);
    const auto profile = correl::intraday_volatility_profile(series);
    {
        auto out = open_output(o.output);
        io::write_volatility_profile_csv(out, profile, p.comments());
        p.output(o.output);
    }
    p.finish(with_suffix(o.output, ".manifest.json"), {}, profile.warnings);
    report_warnings(io_.err, profile.warnings);
    io_.out << "days: " << profile.days_used << '\n' << "slots: " << profile.mean_abs_return.size() << '\n';
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multifractal analysis of high-frequency return series", "mftk"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML/INI file with option values; command-line flags take precedence");
    app.set_version_flag("--version", kVersion);

    IngestOptions ing;
    auto* c_ingest = app.add_subcommand("ingest", "Resample tick data and write log returns");
    c_ingest->add_option("--input", ing.input, "Tick file (timestamp, price)")->required()->check(CLI::ExistingFile);
    c_ingest->add_option("--out", ing.output, "Returns file (.csv for CSV, text otherwise)")->required();
    c_ingest->add_option("--delimiter", ing.delimiter, "Field delimiter")->capture_default_str();
    c_ingest->add_option("--timestamp-format", ing.timestamp_format, "strftime-style timestamp pattern")
        ->capture_default_str();
    c_ingest->add_option("--timezone", ing.timezone, "Exchange time zone the timestamps are expressed in")
        ->capture_default_str();
    c_ingest->add_option("--timestamp-column", ing.timestamp_column, "0-based column")->capture_default_str();
    c_ingest->add_option("--price-column", ing.price_column, "0-based column")->capture_default_str();
    c_ingest->add_flag("--header", ing.header, "First line is a header");
    c_ingest->add_flag("--strict", ing.strict, "Fail on the first malformed record instead of skipping it");
    c_ingest->add_option("--reorder-tolerance", ing.reorder_tolerance,
                         "Seconds a timestamp may step backwards before it is an error")
        ->capture_default_str();
    c_ingest->add_option("--open", ing.open, "Session open HH:MM[:SS]")->capture_default_str();
    c_ingest->add_option("--close", ing.close, "Session close HH:MM[:SS]")->capture_default_str();
    c_ingest->add_option("--cutoff", ing.cutoff, "Seconds before close excluded from sampling")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    c_ingest->add_option("--interval", ing.interval, "Sampling interval in seconds")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    GenerateOptions gen;
    auto* c_generate = app.add_subcommand("generate", "Write a synthetic return series");
    c_generate->add_option("--model", gen.model, "iid | fgn | cascade")->required();
    c_generate->add_option("--out", gen.output, "Returns file")->required();
    c_generate->add_option("--seed", gen.seed, "RNG seed (required)");
    c_generate->add_option("--n", gen.n, "Length for iid and fgn")->capture_default_str();
    c_generate->add_option("--sigma", gen.sigma, "Standard deviation for iid and fgn")->capture_default_str();
    c_generate->add_option("--hurst", gen.hurst, "Hurst exponent for fgn")->capture_default_str();
    c_generate->add_option("--multiplier", gen.multiplier, "Cascade mass fraction a")->capture_default_str();
    c_generate->add_option("--levels", gen.levels, "Cascade depth; length is 2^levels")->capture_default_str();
    c_generate->add_flag("--randomize", gen.randomize, "Randomise which half receives the larger cascade weight");
    c_generate->add_option("--day-length", gen.day_length, "Returns per synthetic day")->capture_default_str();
    c_generate->add_option("--interval", gen.interval, "Declared sampling interval in seconds")->capture_default_str();

    AnalyzeOptions ana;
    auto* c_analyze = app.add_subcommand("analyze", "MF-DFA exponents and singularity spectrum");
    c_analyze->add_option("--input", ana.input, "Returns file")->required()->check(CLI::ExistingFile);
    c_analyze->add_option("--out-prefix", ana.prefix, "Prefix for the output tables")->required();
    add_mfdfa_options(*c_analyze, ana.mfdfa);
    c_analyze->add_option("--envelope-points", ana.envelope_points, "Samples of the Legendre envelope")
        ->capture_default_str()
        ->check(CLI::Range(2, 100000));
    c_analyze->add_option("--jobs", ana.jobs, "Worker threads")->capture_default_str()->check(CLI::Range(1, 1024));

    SurrogateOptions sur;
    auto* c_surrogate = app.add_subcommand("surrogate", "Shuffled-surrogate test of multifractality");
    c_surrogate->add_option("--input", sur.input, "Returns file")->required()->check(CLI::ExistingFile);
    c_surrogate->add_option("--out", sur.output, "Report JSON")->required();
    c_surrogate->add_option("--ensemble-csv", sur.ensemble_csv, "Optional CSV of every surrogate d");
    c_surrogate->add_option("--kind", sur.kind, "full | intraday | daily")->required();
    c_surrogate->add_option("-M,--ensemble-size", sur.ensemble_size, "Number of surrogates")->capture_default_str();
    c_surrogate->add_option("--seed", sur.seed, "RNG seed (required)");
    add_mfdfa_options(*c_surrogate, sur.mfdfa);
    c_surrogate->add_option("--jobs", sur.jobs, "Worker threads")->capture_default_str()->check(CLI::Range(1, 1024));

    AcfOptions acf;
    auto* c_acf = app.add_subcommand("acf", "Sample autocorrelation function");
    c_acf->add_option("--input", acf.input, "Returns file")->required()->check(CLI::ExistingFile);
    c_acf->add_option("--out", acf.output, "Correlogram CSV")->required();
    c_acf->add_option("--transform", acf.transform, "raw | abs | squared")->capture_default_str();
    c_acf->add_option("--max-lag", acf.max_lag, "Largest lag (default: 30 day lengths, capped below N/2)");
    c_acf->add_option("--day-length", acf.day_length, "Returns per day (default: length of the first day block)");
    c_acf->add_flag("--exclude-cross-day", acf.exclude_cross_day, "Drop lagged products spanning two days");
    c_acf->add_option("--peaks-out", acf.peaks_output, "Optional CSV of ACF peaks at day multiples");

    ProfileOptions prof;
    auto* c_profile = app.add_subcommand("profile", "Mean absolute return per intraday slot");
    c_profile->add_option("--input", prof.input, "Returns file")->required()->check(CLI::ExistingFile);
    c_profile->add_option("--out", prof.output, "Profile CSV")->required();

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    if (argv.empty()) argv.push_back("mftk");

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }

    const Streams streams{out, err};
    try {
        if (c_ingest->parsed()) return cmd_ingest(ing, streams);
        if (c_generate->parsed()) return cmd_generate(gen, streams);
        if (c_analyze->parsed()) return cmd_analyze(ana, streams);
        if (c_surrogate->parsed()) return cmd_surrogate(sur, streams);
        if (c_acf->parsed()) return cmd_acf(acf, streams);
        if (c_profile->parsed()) return cmd_profile(prof, streams);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const DegenerateInputError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

}  // namespace mftk::cli
