// bach: command-line front end for the Bachelier pricing toolkit.
//
// Subcommands: price, greeks, ivol, convert, smile, barrier, exotic,
// figure, mc-check. JSON on stdout by default, CSV with --csv or for
// tabular payloads; numbers carry 12 significant digits.
//
// Exit codes: 0 ok, 2 usage, 3 domain error, 4 io error, 5 verification
// failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bachelier/bachelier.hpp"

using nlohmann::json;
using namespace bachelier;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitIo = 4;
constexpr int kExitVerification = 5;

// All numeric output funnels through this 12-significant-digit format so
// that reports are reproducible byte for byte.
std::string fmt_num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

double round12(double x) { return std::strtod(fmt_num(x).c_str(), nullptr); }

json num(double x) { return json(round12(x)); }

void write_output(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::ios_base::failure("cannot open output path: " + out_path);
    file << payload;
    if (!file) throw std::ios_base::failure("failed writing output path: " + out_path);
}

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows) {
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << fmt_num(row[i]);
        os << "\n";
    }
    return os.str();
}

struct CommonFlags {
    std::string model = "bachelier";
    std::string kind = "call";
    double strike = 0.0;
    double forward = std::numeric_limits<double>::quiet_NaN();
    double spot = std::numeric_limits<double>::quiet_NaN();
    double expiry = 1.0;
    double rate = 0.0;
    double carry = 0.0;
    double vol = 0.0;
    double beta = 0.5;
    double anchor = 1.0;
    double sigma0 = 0.0;
    double rho = 0.0;
    double nu = 0.0;
};

void add_market_flags(CLI::App* cmd, CommonFlags& f, bool need_vol = true) {
    cmd->add_option("--kind", f.kind, "call or put")->check(CLI::IsMember({"call", "put"}));
    cmd->add_option("--strike", f.strike, "strike price")->required();
    cmd->add_option("--forward", f.forward, "forward price");
    cmd->add_option("--spot", f.spot, "spot price (forward derived from rates)");
    cmd->add_option("--expiry", f.expiry, "time to expiry in years")->required();
    cmd->add_option("--rate", f.rate, "continuously compounded rate");
    cmd->add_option("--carry", f.carry, "continuous carry / convenience yield");
    auto* vol = cmd->add_option("--vol", f.vol, "volatility (model units)");
    if (need_vol) vol->required();
}

void add_model_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--model", f.model, "pricing model")
        ->check(CLI::IsMember({"bachelier", "bs", "dbs", "cev", "sabr", "nsvh"}));
    cmd->add_option("--beta", f.beta, "dbs/cev/sabr elasticity");
    cmd->add_option("--anchor", f.anchor, "dbs displacement anchor A");
    cmd->add_option("--sigma0", f.sigma0, "sabr/nsvh initial vol");
    cmd->add_option("--rho", f.rho, "sabr/nsvh correlation");
    cmd->add_option("--nu", f.nu, "sabr/nsvh vol of vol");
}

OptionKind kind_of(const CommonFlags& f) {
    return f.kind == "put" ? OptionKind::Put : OptionKind::Call;
}

double forward_of(const CommonFlags& f) {
    if (!std::isnan(f.forward)) return f.forward;
    if (!std::isnan(f.spot)) return forward_from_spot(f.spot, f.rate, f.carry, f.expiry);
    throw std::invalid_argument("either --forward or --spot must be given");
}

ModelSpec model_of(const CommonFlags& f) {
    if (f.model == "bachelier") return BachelierModel{f.vol};
    if (f.model == "bs") return BlackModel{f.vol};
    if (f.model == "dbs") return DbsParams{f.vol, f.beta, f.anchor};
    if (f.model == "cev") return CevParams{f.vol, f.beta};
    if (f.model == "sabr") return SabrParams{f.sigma0, f.beta, f.rho, f.nu};
    return NsvhParams{f.sigma0, f.rho, f.nu};
}

json inputs_json(const CommonFlags& f, double forward) {
    json j{{"kind", f.kind}, {"strike", num(f.strike)}, {"forward", num(forward)},
           {"expiry", num(f.expiry)}, {"rate", num(f.rate)}, {"carry", num(f.carry)}};
    if (f.model == "sabr" || f.model == "nsvh") {
        j["sigma0"] = num(f.sigma0);
        j["rho"] = num(f.rho);
        j["nu"] = num(f.nu);
        if (f.model == "sabr") j["beta"] = num(f.beta);
    } else {
        j["vol"] = num(f.vol);
        if (f.model == "dbs") {
            j["beta"] = num(f.beta);
            j["anchor"] = num(f.anchor);
        }
        if (f.model == "cev") j["beta"] = num(f.beta);
    }
    return j;
}

json greeks_json(const GreeksBlock& g) {
    return json{{"delta", num(g.delta)}, {"gamma", num(g.gamma)}, {"vega", num(g.vega)},
                {"theta", num(g.theta)}};
}

GreeksBlock greeks_of(const CommonFlags& f, OptionKind kind, double forward) {
    if (f.model == "bachelier") return greeks_bachelier(kind, f.strike, forward, f.vol, f.expiry);
    if (f.model == "bs") return greeks_black(kind, f.strike, forward, f.vol, f.expiry);
    if (f.model == "dbs")
        return greeks_dbs(kind, f.strike, forward, {f.vol, f.beta, f.anchor}, f.expiry);
    // finite differences for the remaining models; the vol bump hits the
    // model's own level parameter
    const ModelSpec base = model_of(f);
    auto reprice = [&](double fwd, double vol_scale, double expiry) {
        ModelSpec m = base;
        if (auto* cev = std::get_if<CevParams>(&m)) cev->sigma = vol_scale;
        if (auto* sabr = std::get_if<SabrParams>(&m)) sabr->sigma0 = vol_scale;
        if (auto* nsvh = std::get_if<NsvhParams>(&m)) nsvh->sigma0 = vol_scale;
        return price_vanilla(m, kind, f.strike, fwd, expiry);
    };
    const double level = f.model == "cev" ? f.vol : f.sigma0;
    return greeks_fd(reprice, forward, level, f.expiry);
}

int run_price(const CommonFlags& f, bool csv, const std::string& out, bool with_greeks) {
    const OptionKind kind = kind_of(f);
    const double forward = forward_of(f);
    const double undiscounted = price_vanilla(model_of(f), kind, f.strike, forward, f.expiry);
    PriceReport report = make_report(undiscounted, f.rate, f.expiry);
    if (with_greeks) report.greeks = greeks_of(f, kind, forward);

    if (csv) {
        std::vector<std::string> header{"model", "undiscounted", "discounted"};
        std::ostringstream os;
        os << "model,undiscounted,discounted";
        if (report.greeks) os << ",delta,gamma,vega,theta";
        os << "\n" << f.model << "," << fmt_num(report.undiscounted) << ","
           << fmt_num(report.discounted);
        if (report.greeks)
            os << "," << fmt_num(report.greeks->delta) << "," << fmt_num(report.greeks->gamma)
               << "," << fmt_num(report.greeks->vega) << "," << fmt_num(report.greeks->theta);
        os << "\n";
        write_output(os.str(), out);
        return kExitOk;
    }
    json j{{"model", f.model},
           {"inputs", inputs_json(f, forward)},
           {"undiscounted", num(report.undiscounted)},
           {"discounted", num(report.discounted)},
           {"greeks", report.greeks ? greeks_json(*report.greeks) : json(nullptr)},
           {"warnings", json::array()}};
    write_output(j.dump(2) + "\n", out);
    return kExitOk;
}

int run_ivol(const CommonFlags& f, double price, const std::string& out) {
    const OptionKind kind = kind_of(f);
    const double forward = forward_of(f);
    double vol;
    if (f.model == "bachelier") {
        vol = bachelier_ivol(price, kind, f.strike, forward, f.expiry);
    } else if (f.model == "bs") {
        vol = black_ivol(price, kind, f.strike, forward, f.expiry);
    } else if (f.model == "dbs") {
        vol = dbs_ivol(price, kind, f.strike, forward, f.beta, f.anchor, f.expiry);
    } else {
        throw std::invalid_argument("ivol supports models bachelier, bs, dbs");
    }
    json j{{"model", f.model}, {"price", num(price)}, {"vol", num(vol)},
           {"warnings", json::array()}};
    write_output(j.dump(2) + "\n", out);
    return kExitOk;
}

int run_convert(const std::string& from, const std::string& to, const std::string& variant,
                const CommonFlags& f, const std::string& out) {
    const double forward = forward_of(f);
    double vol = 0.0;
    bool lee_warning = false;
    const bool atm = variant == "atm";
    if (variant == "exact") {
        ModelSpec source = model_of([&] {
            CommonFlags g = f;
            g.model = from;
            return g;
        }());
        const VolTarget target = to == "bachelier" ? VolTarget::bachelier()
                                 : to == "bs"      ? VolTarget::bs()
                                                   : VolTarget::dbs(f.beta, f.anchor);
        vol = exact_convert(source, target, f.strike, forward, f.expiry);
    } else if (from == "bs" && to == "bachelier") {
        vol = bs_to_bachelier_smile(f.strike, f.vol, forward, f.expiry,
                                    variant == "hkl" ? Bs2NVariant::Hkl : Bs2NVariant::Improved);
    } else if (from == "bachelier" && to == "bs") {
        const auto r = bachelier_to_bs_smile(f.strike, f.vol, forward, f.expiry);
        vol = r.vol;
        lee_warning = r.lee_bound_warning;
    } else if (from == "dbs" && to == "bachelier") {
        vol = atm ? dbs_to_bachelier_atm(f.vol, f.beta, f.anchor, forward, f.expiry)
                  : dbs_to_bachelier_smile(f.strike, f.vol, f.beta, f.anchor, forward, f.expiry);
    } else if (from == "dbs" && to == "bs") {
        if (atm) {
            vol = dbs_to_bs_atm(f.vol, f.beta, f.anchor, forward, f.expiry);
        } else {
            const auto r = dbs_to_bs_smile(f.strike, f.vol, f.beta, f.anchor, forward, f.expiry);
            vol = r.vol;
            lee_warning = r.lee_bound_warning;
        }
    } else {
        throw std::invalid_argument("unsupported conversion " + from + " -> " + to);
    }
    json warnings = json::array();
    if (lee_warning) warnings.push_back("lee_bound_warning");
    json j{{"from", from}, {"to", to}, {"variant", variant}, {"vol", num(vol)},
           {"warnings", warnings}};
    write_output(j.dump(2) + "\n", out);
    return kExitOk;
}

int run_smile(const CommonFlags& f, double kmin, double kmax, int points,
              const std::string& out) {
    if (points < 2) throw std::invalid_argument("smile: need at least 2 points");
    const double forward = forward_of(f);
    const ModelSpec model = model_of(f);
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < points; ++i) {
        const double k = kmin + (kmax - kmin) * i / (points - 1);
        double bach_vol = std::numeric_limits<double>::quiet_NaN();
        double bs_vol = std::numeric_limits<double>::quiet_NaN();
        try {
            bach_vol = exact_convert(model, VolTarget::bachelier(), k, forward, f.expiry);
        } catch (const std::exception&) {
        }
        try {
            bs_vol = exact_convert(model, VolTarget::bs(), k, forward, f.expiry);
        } catch (const std::exception&) {
        }
        rows.push_back({k, bach_vol, bs_vol});
    }
    write_output(to_csv({"strike", "bachelier_vol", "bs_vol"}, rows), out);
    return kExitOk;
}

int run_barrier(const CommonFlags& f, const std::string& direction, const std::string& knock,
                double level, const std::string& out) {
    const OptionKind kind = kind_of(f);
    const double forward = forward_of(f);
    const BarrierSpec spec{direction == "up" ? BarrierDirection::Up : BarrierDirection::Down,
                           knock == "in" ? BarrierKnock::In : BarrierKnock::Out, level};
    BarrierPrice r;
    if (f.model == "bachelier") {
        r = barrier_price_bachelier(kind, spec, f.strike, forward, f.vol, f.expiry);
    } else if (f.model == "bs") {
        r = barrier_price_black(kind, spec, f.strike, forward, f.vol, f.expiry);
    } else if (f.model == "dbs") {
        r = barrier_price_dbs(kind, spec, f.strike, forward, {f.vol, f.beta, f.anchor}, f.expiry);
    } else {
        throw std::invalid_argument("barrier supports models bachelier, bs, dbs");
    }
    const char* status = r.status == BarrierStatus::Priced ? "priced"
                         : r.status == BarrierStatus::AlreadyKnockedOut ? "already_knocked_out"
                                                                        : "worthless";
    json j{{"model", f.model},
           {"direction", direction},
           {"knock", knock},
           {"level", num(level)},
           {"undiscounted", num(r.price)},
           {"discounted", num(discount(r.price, f.rate, f.expiry))},
           {"status", status},
           {"warnings", json::array()}};
    write_output(j.dump(2) + "\n", out);
    return kExitOk;
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> xs;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) xs.push_back(std::stod(item));
    }
    return xs;
}

int run_exotic(const std::string& type, const CommonFlags& f, const std::string& weights,
               const std::string& forwards, const std::string& vols, const std::string& corr,
               const std::string& obs, double window_start, bool has_window,
               const std::string& out) {
    const OptionKind kind = kind_of(f);
    double undiscounted;
    if (type == "basket" || type == "spread") {
        BasketSpec spec;
        spec.forwards = parse_list(forwards);
        spec.vols = parse_list(vols);
        spec.expiry = f.expiry;
        const std::size_t n = spec.forwards.size();
        spec.weights = weights.empty() && type == "spread" ? std::vector<double>{1.0, -1.0}
                                                           : parse_list(weights);
        const auto rho = parse_list(corr);
        if (rho.size() == 1 && n == 2) {
            spec.correlation = {{1.0, rho[0]}, {rho[0], 1.0}};
        } else if (rho.size() == n * n) {
            spec.correlation.assign(n, std::vector<double>(n));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) spec.correlation[i][j] = rho[i * n + j];
        } else {
            throw std::invalid_argument(
                "exotic: --corr needs a single value (2 assets) or a full row-major matrix");
        }
        undiscounted = basket_price(kind, f.strike, spec);
    } else if (type == "asian") {
        const double forward = forward_of(f);
        AsianSpec spec = has_window ? AsianSpec::continuous_window(window_start, f.expiry)
                                    : AsianSpec::discrete(parse_list(obs));
        undiscounted = asian_price(kind, f.strike, forward, f.vol, spec);
    } else {
        throw std::invalid_argument("exotic type must be basket, spread or asian");
    }
    json j{{"type", type},
           {"undiscounted", num(undiscounted)},
           {"discounted", num(discount(undiscounted, f.rate, f.expiry))},
           {"warnings", json::array()}};
    write_output(j.dump(2) + "\n", out);
    return kExitOk;
}

int run_figure(const std::string& id, const std::string& out) {
    const FigureTable t = figure_table(id);
    write_output(to_csv(t.columns, t.rows), out);
    return kExitOk;
}

struct McCheckLine {
    std::string label;
    double closed, mc_mean, mc_stderr;
};

int run_mc_check(const std::string& scenario, std::uint64_t seed, const std::string& out) {
    std::vector<McCheckLine> lines;
    const OptionKind call = OptionKind::Call;
    const OptionKind put = OptionKind::Put;
    if (scenario == "vanilla") {
        const mc::McConfig cfg{400000, 1, seed, false};
        for (double k : {0.8, 1.0, 1.25}) {
            const auto est = mc::vanilla(BachelierModel{0.5}, call, k, 1.0, 1.0, cfg);
            lines.push_back({"bachelier call K=" + fmt_num(k),
                             price_bachelier(call, k, 1.0, 0.5, 1.0), est.mean,
                             est.stderr_of_mean});
        }
        const auto est = mc::vanilla(BlackModel{0.5}, put, 0.9, 1.0, 1.0, cfg);
        lines.push_back({"bs put K=0.9", price_black(put, 0.9, 1.0, 0.5, 1.0), est.mean,
                         est.stderr_of_mean});
    } else if (scenario == "barrier" || scenario == "barrier-fig4") {
        const double vol = 0.2 * std::sqrt(2.0 * M_PI);
        const mc::McConfig cfg{200000, 250, seed, false};
        const BarrierSpec dop{BarrierDirection::Down, BarrierKnock::Out, 0.7};
        const BarrierSpec uoc{BarrierDirection::Up, BarrierKnock::Out, 1.5};
        auto e1 = mc::barrier(BachelierModel{vol}, put, dop, 1.0, 1.0, 1.0, cfg);
        lines.push_back({"down-out put L=0.7",
                         barrier_price_bachelier(put, dop, 1.0, 1.0, vol, 1.0).price, e1.mean,
                         e1.stderr_of_mean});
        auto e2 = mc::barrier(BachelierModel{vol}, call, uoc, 1.0, 1.0, 1.0, cfg);
        lines.push_back({"up-out call H=1.5",
                         barrier_price_bachelier(call, uoc, 1.0, 1.0, vol, 1.0).price, e2.mean,
                         e2.stderr_of_mean});
    } else if (scenario == "asian") {
        const auto spec = AsianSpec::continuous_window(0.0, 1.0);
        const mc::McConfig cfg{100000, 1000, seed, false};
        const auto est = mc::asian(call, 1.0, 1.0, 0.5, spec, cfg);
        lines.push_back({"continuous asian", asian_price(call, 1.0, 1.0, 0.5, spec), est.mean,
                         est.stderr_of_mean});
    } else if (scenario == "basket") {
        BasketSpec spec;
        spec.weights = {0.5, 0.3, 0.2};
        spec.forwards = {1.0, 1.2, 0.9};
        spec.vols = {0.3, 0.2, 0.4};
        spec.correlation = {{1.0, 0.5, -0.2}, {0.5, 1.0, 0.1}, {-0.2, 0.1, 1.0}};
        spec.expiry = 1.5;
        const auto est = mc::basket(call, 1.05, spec, {400000, 1, seed, false});
        lines.push_back(
            {"3-asset basket", basket_price(call, 1.05, spec), est.mean, est.stderr_of_mean});
    } else if (scenario == "nsvh") {
        const NsvhParams p{nsvh_sigma0_for_atm(20.0, 0.1, 0.2, 1.0), 0.1, 0.2};
        const auto est = mc::vanilla(p, call, 110.0, 100.0, 1.0, {1000000, 1, seed, false});
        lines.push_back({"nsvh call K=110", nsvh_price(call, 110.0, 100.0, p, 1.0), est.mean,
                         est.stderr_of_mean});
    } else if (scenario == "cev") {
        const CevParams p{0.5, 0.5};
        const auto est = mc::vanilla(p, call, 1.0, 1.0, 1.0, {200000, 500, seed, false});
        lines.push_back(
            {"cev call ATM", price_cev(call, 1.0, 1.0, p, 1.0), est.mean, est.stderr_of_mean});
    } else if (scenario == "sabr") {
        const SabrParams p{0.5, 0.5, -0.3, 0.4};
        const double vol = sabr_bachelier_vol(1.2, 1.0, p, 1.0);
        const auto est = mc::vanilla(p, call, 1.2, 1.0, 1.0, {100000, 500, seed, false});
        // the expansion carries its own error; allow 0.5% of vol on top
        const double budget = norm_pdf((1.0 - 1.2) / vol) * 0.005 * vol / 3.0;
        lines.push_back({"sabr call K=1.2", price_bachelier(call, 1.2, 1.0, vol, 1.0), est.mean,
                         est.stderr_of_mean + budget});
    } else {
        throw std::invalid_argument(
            "unknown scenario (use vanilla, barrier-fig4, asian, basket, nsvh, cev, sabr)");
    }

    std::ostringstream os;
    bool ok = true;
    for (const auto& l : lines) {
        const double z = (l.mc_mean - l.closed) / l.mc_stderr;
        ok = ok && std::abs(z) <= 3.0;
        os << (std::abs(z) <= 3.0 ? "PASS " : "FAIL ") << l.label
           << ": closed=" << fmt_num(l.closed) << " mc=" << fmt_num(l.mc_mean)
           << " stderr=" << fmt_num(l.mc_stderr) << " z=" << fmt_num(z) << "\n";
    }
    write_output(os.str(), out);
    return ok ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bachelier model pricing toolkit"};
    app.require_subcommand(1);

    CommonFlags f;
    bool csv = false;
    bool with_greeks = false;
    std::string out, variant = "improved", from = "bs", to = "bachelier";
    std::string direction = "down", knock = "out", figure_id, scenario = "vanilla";
    std::string type = "basket", weights, forwards, vols, corr, obs;
    double price_in = 0.0, level = 0.0, kmin = 0.5, kmax = 2.0, window_start = 0.0;
    int points = 31;
    std::uint64_t seed = 42;

    auto* p_cmd = app.add_subcommand("price", "price a vanilla option");
    add_model_flags(p_cmd, f);
    add_market_flags(p_cmd, f, false);
    p_cmd->add_flag("--csv", csv, "CSV instead of JSON");
    p_cmd->add_flag("--greeks", with_greeks, "include the Greeks block");
    p_cmd->add_option("--out", out, "write to file instead of stdout");

    auto* g_cmd = app.add_subcommand("greeks", "Greeks of a vanilla option");
    add_model_flags(g_cmd, f);
    add_market_flags(g_cmd, f, false);
    g_cmd->add_flag("--csv", csv, "CSV instead of JSON");
    g_cmd->add_option("--out", out, "write to file instead of stdout");

    auto* iv_cmd = app.add_subcommand("ivol", "invert an option price to a volatility");
    add_model_flags(iv_cmd, f);
    add_market_flags(iv_cmd, f, false);
    iv_cmd->add_option("--price", price_in, "undiscounted option price")->required();
    iv_cmd->add_option("--out", out, "write to file instead of stdout");

    auto* cv_cmd = app.add_subcommand("convert", "convert a volatility between models");
    cv_cmd->add_option("--from", from, "source model")
        ->check(CLI::IsMember({"bachelier", "bs", "dbs"}));
    cv_cmd->add_option("--to", to, "target model")
        ->check(CLI::IsMember({"bachelier", "bs", "dbs"}));
    cv_cmd->add_option("--variant", variant, "improved, hkl, atm or exact")
        ->check(CLI::IsMember({"improved", "hkl", "atm", "exact"}));
    add_market_flags(cv_cmd, f);
    cv_cmd->add_option("--beta", f.beta, "dbs elasticity");
    cv_cmd->add_option("--anchor", f.anchor, "dbs displacement anchor");
    cv_cmd->add_option("--out", out, "write to file instead of stdout");

    auto* sm_cmd = app.add_subcommand("smile", "tabulate a model smile as CSV");
    add_model_flags(sm_cmd, f);
    add_market_flags(sm_cmd, f, false);
    sm_cmd->get_option("--strike")->required(false);
    sm_cmd->add_option("--kmin", kmin, "lowest strike")->required();
    sm_cmd->add_option("--kmax", kmax, "highest strike")->required();
    sm_cmd->add_option("--points", points, "number of strikes");
    sm_cmd->add_option("--out", out, "write to file instead of stdout");

    auto* b_cmd = app.add_subcommand("barrier", "price a knock-out/knock-in barrier option");
    add_model_flags(b_cmd, f);
    add_market_flags(b_cmd, f);
    b_cmd->add_option("--direction", direction, "down or up")
        ->check(CLI::IsMember({"down", "up"}));
    b_cmd->add_option("--knock", knock, "out or in")->check(CLI::IsMember({"out", "in"}));
    b_cmd->add_option("--level", level, "barrier level")->required();
    b_cmd->add_option("--out", out, "write to file instead of stdout");

    auto* e_cmd = app.add_subcommand("exotic", "price basket, spread or asian claims");
    e_cmd->add_option("--type", type, "basket, spread or asian")
        ->check(CLI::IsMember({"basket", "spread", "asian"}));
    add_market_flags(e_cmd, f, false);
    e_cmd->add_option("--weights", weights, "comma-separated basket weights");
    e_cmd->add_option("--forwards", forwards, "comma-separated forwards");
    e_cmd->add_option("--vols", vols, "comma-separated Bachelier vols");
    e_cmd->add_option("--corr", corr, "single correlation or row-major matrix");
    e_cmd->add_option("--obs", obs, "comma-separated Asian observation times");
    auto* win = e_cmd->add_option("--window-start", window_start,
                                  "continuous averaging window start (ends at expiry)");
    e_cmd->add_option("--out", out, "write to file instead of stdout");

    auto* f_cmd = app.add_subcommand("figure", "emit a figure preset as CSV");
    f_cmd->add_option("--id", figure_id, "fig1..fig5")->required();
    f_cmd->add_option("--out", out, "write to file instead of stdout");

    auto* m_cmd = app.add_subcommand("mc-check", "cross-check closed forms against Monte Carlo");
    m_cmd->add_option("--scenario", scenario,
                      "vanilla, barrier-fig4, asian, basket, nsvh, cev, sabr");
    m_cmd->add_option("--seed", seed, "RNG seed");
    auto* mc_vol = m_cmd->add_option("--vol", f.vol, "override the scenario volatility");
    m_cmd->add_option("--out", out, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (p_cmd->parsed()) {
            if (f.model != "sabr" && f.model != "nsvh" && f.vol <= 0.0)
                throw std::invalid_argument("--vol must be given and positive");
            return run_price(f, csv, out, with_greeks);
        }
        if (g_cmd->parsed()) {
            const double fwd = forward_of(f);
            const auto g = greeks_of(f, kind_of(f), fwd);
            if (csv) {
                std::ostringstream os;
                os << "model,delta,gamma,vega,theta\n"
                   << f.model << "," << fmt_num(g.delta) << "," << fmt_num(g.gamma) << ","
                   << fmt_num(g.vega) << "," << fmt_num(g.theta) << "\n";
                write_output(os.str(), out);
            } else {
                json j{{"model", f.model}, {"inputs", inputs_json(f, fwd)},
                       {"greeks", greeks_json(g)}, {"warnings", json::array()}};
                write_output(j.dump(2) + "\n", out);
            }
            return kExitOk;
        }
        if (iv_cmd->parsed()) return run_ivol(f, price_in, out);
        if (cv_cmd->parsed()) return run_convert(from, to, variant, f, out);
        if (sm_cmd->parsed()) return run_smile(f, kmin, kmax, points, out);
        if (b_cmd->parsed()) return run_barrier(f, direction, knock, level, out);
        if (e_cmd->parsed())
            return run_exotic(type, f, weights, forwards, vols, corr, obs, window_start,
                              win->count() > 0, out);
        if (f_cmd->parsed()) return run_figure(figure_id, out);
        if (m_cmd->parsed()) {
            // validate before any simulation starts
            if (mc_vol->count() > 0 && f.vol <= 0.0)
                throw std::invalid_argument("--vol must be positive");
            return run_mc_check(scenario, seed, out);
        }
    } catch (const std::ios_base::failure& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitUsage;
}
