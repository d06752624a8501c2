#include "vdreg/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace vdreg::io {

namespace {

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

void read_opt_double(const json& j, const char* key, std::optional<double>& out) {
    if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<double>();
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r\"");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\"");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

}  // namespace

RunConfig run_config_from_json(const json& j) {
    RunConfig rc;
    try {
        auto& c = rc.model;
        if (j.contains("family")) c.family = parse_family(j.at("family").get<std::string>());
        read_opt(j, "M", c.M);
        read_opt(j, "sim_v1", c.sim_v1);
        read_opt(j, "sim_mu0", c.sim_mu0);
        read_opt(j, "sim_s0sq", c.sim_s0sq);
        read_opt(j, "sim_alpha", c.sim_alpha);
        read_opt(j, "m0", c.m0);
        read_opt(j, "v_sq", c.v_sq);
        read_opt(j, "a_sigma", c.a_sigma);
        read_opt(j, "a_sigma0", c.a_sigma0);
        read_opt(j, "flat_likelihood", c.flat_likelihood);
        if (j.contains("mcmc")) {
            const auto& m = j.at("mcmc");
            read_opt(m, "iterations", c.mcmc.iterations);
            read_opt(m, "burn_in", c.mcmc.burn_in);
            read_opt(m, "thin", c.mcmc.thin);
            read_opt(m, "seed", c.mcmc.seed);
            read_opt(m, "step_sigma_star", c.mcmc.step_sigma_star);
            read_opt(m, "step_sigma0", c.mcmc.step_sigma0);
        }
        if (j.contains("fix_hyper")) {
            const auto& f = j.at("fix_hyper");
            read_opt_double(f, "mu0", c.fix.mu0);
            read_opt_double(f, "sigma0", c.fix.sigma0);
            read_opt_double(f, "sigma_star", c.fix.sigma_star);
        }
        if (j.contains("covariates")) {
            for (const auto& [name, spec] : j.at("covariates").items()) {
                CovariateSpec cs;
                if (spec.contains("kind")) cs.kind = parse_kind(spec.at("kind").get<std::string>());
                read_opt(spec, "n_levels", cs.n_levels);
                if (cs.kind == CovariateKind::categorical && cs.n_levels < 1)
                    throw Error(ErrorCode::InvalidConfig, "categorical covariate '" + name + "' needs n_levels >= 1");
                rc.covariates[name] = cs;
            }
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, std::string("config: ") + e.what());
    }
    validate_config(rc.model);
    return rc;
}

json to_json(const RunConfig& rc) {
    const auto& c = rc.model;
    json j;
    j["family"] = to_string(c.family);
    j["M"] = c.M;
    j["sim_v1"] = c.sim_v1;
    j["sim_mu0"] = c.sim_mu0;
    j["sim_s0sq"] = c.sim_s0sq;
    j["sim_alpha"] = c.sim_alpha;
    j["m0"] = c.m0;
    j["v_sq"] = c.v_sq;
    j["a_sigma"] = c.a_sigma;
    j["a_sigma0"] = c.a_sigma0;
    j["flat_likelihood"] = c.flat_likelihood;
    j["mcmc"] = {{"iterations", c.mcmc.iterations},
                 {"burn_in", c.mcmc.burn_in},
                 {"thin", c.mcmc.thin},
                 {"seed", c.mcmc.seed},
                 {"step_sigma_star", c.mcmc.step_sigma_star},
                 {"step_sigma0", c.mcmc.step_sigma0}};
    json fix = json::object();
    if (c.fix.mu0) fix["mu0"] = *c.fix.mu0;
    if (c.fix.sigma0) fix["sigma0"] = *c.fix.sigma0;
    if (c.fix.sigma_star) fix["sigma_star"] = *c.fix.sigma_star;
    j["fix_hyper"] = fix;
    json cov = json::object();
    for (const auto& [name, spec] : rc.covariates)
        cov[name] = {{"kind", to_string(spec.kind)}, {"n_levels", spec.n_levels}};
    j["covariates"] = cov;
    return j;
}

RunConfig load_run_config(const fs::path& path) {
    try {
        return run_config_from_json(json::parse(read_text(path)));
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
    }
}

std::string format_double(double v) {
    if (std::isnan(v)) return "NA";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

Dataset parse_csv(const std::string& text, const std::map<std::string, CovariateSpec>& covariates,
                  const std::string& source) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, source + ": empty file");
    const auto header = split_row(line);
    int y_col = -1;
    Dataset d;
    std::vector<int> cov_cols;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == "y") {
            y_col = static_cast<int>(c);
            continue;
        }
        cov_cols.push_back(static_cast<int>(c));
        d.names.push_back(header[c]);
        const auto it = covariates.find(header[c]);
        const CovariateSpec spec = it == covariates.end() ? CovariateSpec{} : it->second;
        d.kinds.push_back(spec.kind);
        d.n_levels.push_back(spec.kind == CovariateKind::categorical ? spec.n_levels : 0);
    }
    for (const auto& [name, spec] : covariates)
        if (std::find(d.names.begin(), d.names.end(), name) == d.names.end())
            throw Error(ErrorCode::SchemaMismatch, source + ": declared covariate '" + name + "' not in header");

    std::vector<double> xs;
    std::vector<std::uint8_t> obs;
    std::vector<double> ys;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        ++row;
        auto cells = split_row(line);
        if (cells.size() != header.size()) {
            std::ostringstream os;
            os << source << ": row " << row << " has " << cells.size() << " cells, header has " << header.size();
            throw Error(ErrorCode::ShapeMismatch, os.str());
        }
        auto parse = [&](std::size_t c, double& out) {
            const std::string& s = cells[c];
            if (s.empty() || s == "NA") return false;
            const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
            if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
                std::ostringstream os;
                os << source << ": cannot parse '" << s << "' at row " << row << ", column " << c + 1 << " ("
                   << header[c] << ")";
                throw Error(ErrorCode::ParseError, os.str());
            }
            return true;
        };
        if (y_col >= 0) {
            double v = 0.0;
            if (!parse(static_cast<std::size_t>(y_col), v))
                throw Error(ErrorCode::BadOutcome,
                            source + ": missing response at row " + std::to_string(row) + " (drop such rows)");
            ys.push_back(v);
        }
        for (int c : cov_cols) {
            double v = 0.0;
            const bool seen = parse(static_cast<std::size_t>(c), v);
            xs.push_back(seen ? v : std::nan(""));
            obs.push_back(seen ? 1 : 0);
        }
    }
    if (row == 0) throw Error(ErrorCode::ParseError, source + ": no data rows");
    d.x = Matrix<double>(row, cov_cols.size());
    d.observed = Matrix<std::uint8_t>(row, cov_cols.size());
    for (std::size_t i = 0; i < row; ++i)
        for (std::size_t l = 0; l < cov_cols.size(); ++l) {
            d.x(i, l) = xs[i * cov_cols.size() + l];
            d.observed(i, l) = obs[i * cov_cols.size() + l];
        }
    if (y_col >= 0) d.y = std::move(ys);
    return d;
}

Dataset read_csv(const fs::path& path, const std::map<std::string, CovariateSpec>& covariates) {
    return parse_csv(read_text(path), covariates, path.string());
}

void write_csv(const fs::path& path, const Dataset& d) {
    std::ostringstream os;
    bool first = true;
    if (d.y) {
        os << "y";
        first = false;
    }
    for (const auto& n : d.names) {
        os << (first ? "" : ",") << n;
        first = false;
    }
    os << '\n';
    for (std::size_t i = 0; i < d.m(); ++i) {
        first = true;
        if (d.y) {
            os << format_double((*d.y)[i]);
            first = false;
        }
        for (std::size_t l = 0; l < d.p(); ++l) {
            os << (first ? "" : ",") << (d.is_observed(i, l) ? format_double(d.x(i, l)) : "NA");
            first = false;
        }
        os << '\n';
    }
    write_text_atomic(path, os.str());
}

json to_json(const Standardization& t) { return {{"center", t.center}, {"scale", t.scale}}; }

Standardization standardization_from_json(const json& j) {
    Standardization t;
    t.center = j.at("center").get<std::vector<double>>();
    t.scale = j.at("scale").get<std::vector<double>>();
    return t;
}

void write_draws(const fs::path& dir, const PosteriorDraws& draws) {
    std::ostringstream units, hyper;
    units << "draw,unit,label,mu_star,sigma_star\n";
    hyper << "draw,k,mu0,sigma0\n";
    for (std::size_t t = 0; t < draws.size(); ++t) {
        const auto& s = draws.states[t];
        for (std::size_t i = 0; i < s.labels.size(); ++i) {
            const auto c = static_cast<std::size_t>(s.labels[i]);
            units << t + 1 << ',' << i + 1 << ',' << c + 1 << ',' << format_double(s.mu_star[c]) << ','
                  << format_double(s.sigma_star[c]) << '\n';
        }
        hyper << t + 1 << ',' << s.k() << ',' << format_double(s.mu0) << ',' << format_double(s.sigma0) << '\n';
    }
    write_text_atomic(dir / "draws_units.csv", units.str());
    write_text_atomic(dir / "draws_hyper.csv", hyper.str());
}

PosteriorDraws read_draws(const fs::path& dir) {
    PosteriorDraws draws;
    auto rows_of = [](const fs::path& path) {
        std::istringstream in(read_text(path));
        std::string line;
        std::getline(in, line);
        std::vector<std::vector<std::string>> rows;
        while (std::getline(in, line))
            if (!trim(line).empty()) rows.push_back(split_row(line));
        return rows;
    };
    auto num = [](const std::string& s) {
        double v = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc{}) throw Error(ErrorCode::ParseError, "bad number '" + s + "' in draws file");
        return v;
    };
    for (const auto& r : rows_of(dir / "draws_hyper.csv")) {
        if (r.size() != 4) throw Error(ErrorCode::ParseError, "draws_hyper.csv: expected 4 columns");
        PartitionState s;
        const int k = static_cast<int>(num(r[1]));
        s.mu_star.assign(static_cast<std::size_t>(k), 0.0);
        s.sigma_star.assign(static_cast<std::size_t>(k), 0.0);
        s.mu0 = num(r[2]);
        s.sigma0 = num(r[3]);
        draws.states.push_back(std::move(s));
    }
    for (const auto& r : rows_of(dir / "draws_units.csv")) {
        if (r.size() != 5) throw Error(ErrorCode::ParseError, "draws_units.csv: expected 5 columns");
        const auto t = static_cast<std::size_t>(num(r[0])) - 1;
        const auto i = static_cast<std::size_t>(num(r[1])) - 1;
        const int c = static_cast<int>(num(r[2])) - 1;
        auto& s = draws.states.at(t);
        if (s.labels.size() <= i) s.labels.resize(i + 1, -1);
        s.labels[i] = c;
        s.mu_star.at(static_cast<std::size_t>(c)) = num(r[3]);
        s.sigma_star.at(static_cast<std::size_t>(c)) = num(r[4]);
    }
    return draws;
}

json diagnostics_json(const ChainDiagnostics& d) {
    return {{"retained", d.retained},
            {"sigma_star_acceptance", d.acceptance.sigma_star_rate()},
            {"sigma_star_proposed", d.acceptance.sigma_star_proposed},
            {"sigma_star_accepted", d.acceptance.sigma_star_accepted},
            {"sigma0_acceptance", d.acceptance.sigma0_rate()},
            {"sigma0_proposed", d.acceptance.sigma0_proposed},
            {"sigma0_accepted", d.acceptance.sigma0_accepted}};
}

void append_results(const fs::path& path, const std::vector<ResultRow>& rows) {
    const bool fresh = !fs::exists(path);
    std::ofstream out(path, std::ios::app);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    if (fresh) out << kResultsHeader << '\n';
    for (const auto& r : rows)
        out << r.command << ',' << r.p << ',' << r.noise << ',' << r.missing_type << ',' << r.missing_frac << ','
            << r.hetero << ',' << r.seed << ',' << r.method << ',' << r.metric << ',' << r.value << ',' << r.n << ','
            << r.replicate << ',' << r.status << '\n';
}

void write_text_atomic(const fs::path& path, const std::string& text) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
        out << text;
        if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
    }
    fs::rename(tmp, path);
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace vdreg::io
