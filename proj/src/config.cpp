#include "krrlab/config.hpp"

#include "krrlab/errors.hpp"
#include "krrlab/format.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace krrlab {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<double> parse_list(std::string_view text)
{
    std::vector<double> out;
    while (true) {
        const auto comma = text.find(',');
        out.push_back(parse_real(trim(text.substr(0, comma))));
        if (comma == std::string_view::npos)
            break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

std::string emit_list(const std::vector<double>& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0)
            out += ",";
        out += format_real(values[i]);
    }
    return out;
}

std::size_t parse_count(std::string_view text)
{
    const long long v = parse_integer(text);
    if (v < 0)
        throw std::invalid_argument("expected a non-negative integer, got '" + std::string(text) + "'");
    return static_cast<std::size_t>(v);
}

std::uint64_t parse_seed(std::string_view text)
{
    std::uint64_t v = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || first == last)
        throw std::invalid_argument("not an unsigned 64-bit seed: '" + std::string(text) + "'");
    return v;
}

void apply(ExperimentConfig& c, const std::string& key, std::string_view value)
{
    if (key == "experiment_id") {
        if (value.empty() || value.find_first_of(",\"\n") != std::string_view::npos)
            throw std::invalid_argument("experiment_id must be non-empty without commas or quotes");
        c.experiment_id = std::string(value);
    } else if (key == "kernel") {
        c.kernel = parse_kernel_kind(value);
    } else if (key == "mercer_terms") {
        c.mercer_terms = parse_count(value);
    } else if (key == "target") {
        c.target = parse_target_family(value);
    } else if (key == "s") {
        c.s = parse_real(value);
    } else if (key == "beta") {
        c.beta = parse_real(value);
    } else if (key == "lambda_rule") {
        if (value == "fixed_power")
            c.lambda_rule = LambdaRuleKind::fixed_power;
        else if (value == "cross_validation")
            c.lambda_rule = LambdaRuleKind::cross_validation;
        else
            throw std::invalid_argument("unknown lambda_rule '" + std::string(value) + "'");
    } else if (key == "c_grid") {
        c.c_grid = parse_list(value);
    } else if (key == "cv_folds") {
        c.cv_folds = parse_count(value);
    } else if (key == "cv_grid") {
        c.cv_grid = value == "auto" ? std::vector<double>{} : parse_list(value);
    } else if (key == "cv_points") {
        c.cv_points = parse_count(value);
    } else if (key == "cv_span") {
        c.cv_span = parse_real(value);
    } else if (key == "n_start") {
        c.n_start = parse_count(value);
    } else if (key == "n_stop") {
        c.n_stop = parse_count(value);
    } else if (key == "n_step") {
        c.n_step = parse_count(value);
    } else if (key == "trials") {
        c.trials = parse_count(value);
    } else if (key == "truncation") {
        c.truncation = parse_count(value);
    } else if (key == "quadrature_points") {
        c.quadrature_points = value == "auto" ? 0 : parse_count(value);
    } else if (key == "noise_sigma") {
        c.noise_sigma = parse_real(value);
    } else if (key == "seed") {
        c.seed = parse_seed(value);
    } else if (key == "output_dir") {
        c.output_dir = std::string(value);
    } else {
        throw std::invalid_argument("unknown key '" + key + "'");
    }
}

} // namespace

std::string_view lambda_rule_name(LambdaRuleKind kind) noexcept
{
    return kind == LambdaRuleKind::fixed_power ? "fixed_power" : "cross_validation";
}

ExperimentConfig parse_config(std::string_view text)
{
    ExperimentConfig config;
    std::map<std::string, std::size_t> seen;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (auto [it, fresh] = seen.emplace(key, line_no); !fresh)
            throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key +
                              "' (first set on line " + std::to_string(it->second) + ")");
        try {
            apply(config, key, value);
        } catch (const std::exception& e) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    validate(config);
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string emit_config(const ExperimentConfig& c)
{
    std::ostringstream out;
    out << "experiment_id = " << c.experiment_id << "\n"
        << "kernel = " << kernel_kind_name(c.kernel) << "\n"
        << "mercer_terms = " << c.mercer_terms << "\n"
        << "target = " << target_family_name(c.target) << "\n"
        << "s = " << format_real(c.s) << "\n"
        << "beta = " << format_real(c.beta) << "\n"
        << "lambda_rule = " << lambda_rule_name(c.lambda_rule) << "\n"
        << "c_grid = " << emit_list(c.c_grid) << "\n"
        << "cv_folds = " << c.cv_folds << "\n"
        << "cv_grid = " << (c.cv_grid.empty() ? std::string("auto") : emit_list(c.cv_grid)) << "\n"
        << "cv_points = " << c.cv_points << "\n"
        << "cv_span = " << format_real(c.cv_span) << "\n"
        << "n_start = " << c.n_start << "\n"
        << "n_stop = " << c.n_stop << "\n"
        << "n_step = " << c.n_step << "\n"
        << "trials = " << c.trials << "\n"
        << "truncation = " << c.truncation << "\n"
        << "quadrature_points = "
        << (c.quadrature_points == 0 ? std::string("auto") : std::to_string(c.quadrature_points)) << "\n"
        << "noise_sigma = " << format_real(c.noise_sigma) << "\n"
        << "seed = " << c.seed << "\n"
        << "output_dir = " << c.output_dir << "\n";
    return out.str();
}

void validate(const ExperimentConfig& c)
{
    const auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    if (c.n_start < 2)
        fail("n_start must be >= 2");
    if (c.n_step < 1)
        fail("n_step must be >= 1");
    if (c.n_stop < c.n_start)
        fail("n_stop must be >= n_start");
    if (c.trials < 2)
        fail("trials must be >= 2");
    if (!(c.s > 0.0 && c.s <= 2.0))
        fail("s must lie in (0, 2]");
    if (!(c.beta > 1.0))
        fail("beta must exceed 1");
    if (!(c.noise_sigma >= 0.0))
        fail("noise_sigma must be non-negative");
    if (c.truncation < 1)
        fail("truncation must be >= 1");
    if (c.kernel == KernelKind::truncated_mercer && c.mercer_terms < 1)
        fail("mercer_terms must be >= 1");
    if (c.quadrature_points != 0 && (c.quadrature_points < 3 || c.quadrature_points % 2 == 0))
        fail("quadrature_points must be odd and >= 3");
    if (c.lambda_rule == LambdaRuleKind::fixed_power) {
        if (c.c_grid.empty())
            fail("c_grid must not be empty");
        for (double v : c.c_grid)
            if (!(v > 0.0))
                fail("c_grid values must be positive");
    } else {
        if (c.cv_folds < 2)
            fail("cv_folds must be >= 2");
        if (c.n_start < c.cv_folds)
            fail("n_start must be >= cv_folds");
        if (c.cv_grid.empty()) {
            if (c.cv_points < 2 || !(c.cv_span > 1.0))
                fail("auto cv grid needs cv_points >= 2 and cv_span > 1");
        } else {
            for (std::size_t i = 0; i < c.cv_grid.size(); ++i) {
                if (!(c.cv_grid[i] > 0.0) || (i > 0 && !(c.cv_grid[i] > c.cv_grid[i - 1])))
                    fail("cv_grid must be positive and strictly increasing");
            }
        }
    }
}

std::vector<std::size_t> sample_sizes(const ExperimentConfig& c)
{
    std::vector<std::size_t> ns;
    for (std::size_t n = c.n_start; n <= c.n_stop; n += c.n_step)
        ns.push_back(n);
    return ns;
}

KernelFn make_kernel(const ExperimentConfig& c)
{
    switch (c.kernel) {
    case KernelKind::sobolev_h1:
        return KernelFn::sobolev_h1();
    case KernelKind::first_order_min:
        return KernelFn::first_order_min();
    case KernelKind::truncated_mercer:
        return KernelFn::truncated_mercer(SpectralModel::first_order_min(), c.mercer_terms);
    }
    throw std::logic_error("make_kernel: unhandled kernel kind");
}

SeriesTarget make_target(const ExperimentConfig& c)
{
    return SeriesTarget(c.target, c.s, c.truncation);
}

} // namespace krrlab
