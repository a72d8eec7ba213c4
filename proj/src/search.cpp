#include "traceforge/search.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "traceforge/factor.hpp"
#include "traceforge/lll.hpp"

namespace traceforge {

AuxFunction SearchState::aux_function() const {
    std::vector<AuxTerm> terms;
    for (std::size_t j = 0; j < polys.size(); ++j) terms.push_back({polys[j], weights[j]});
    return AuxFunction(std::move(terms));
}

double SearchState::t() const {
    double acc = 0.0;
    for (std::size_t j = 0; j < polys.size(); ++j) acc += weights[j] * polys[j].degree();
    return acc;
}

long SearchState::r() const {
    long acc = 0;
    for (const auto& p : polys) acc += p.degree();
    return acc;
}

SearchState seed() {
    SearchState st;
    SilpResult res = silp_optimize({IntPoly::x()}, {}, 1e-9);
    st.polys = {IntPoly::x()};
    st.weights = {res.af.terms()[0].weight};
    st.m = res.m;
    for (const auto& it : local_minima(res.af, 1e-9)) st.minima.push_back(it);
    return st;
}

namespace {

std::vector<double> uniform_points(double cap, std::size_t count) {
    std::vector<double> pts(count);
    for (std::size_t i = 0; i < count; ++i)
        pts[i] = cap * static_cast<double>(i + 1) / static_cast<double>(count);
    return pts;
}

}  // namespace

SearchState search_step(SearchState state, int k, const SearchConfig& cfg) {
    if (k < 1) throw std::invalid_argument("candidate degree must be >= 1");
    StepRecord rec;
    rec.k = k;
    rec.m_before = state.m;

    // Q = product of the current polynomials, each with exponent 1
    IntPoly q = IntPoly::constant(1);
    for (const auto& p : state.polys) q = q * p;

    SearchLatticeSpec spec;
    spec.base_poly = q;
    spec.k = k;
    spec.t = state.t();
    spec.r = state.r();
    spec.scale = cfg.lll_scale;
    spec.eps_root = cfg.eps_root;
    std::vector<double> pts =
        uniform_points(cfg.interval_cap, 4 * static_cast<std::size_t>(spec.r + k));
    pts.insert(pts.end(), state.minima.begin(), state.minima.end());
    std::sort(pts.begin(), pts.end());
    pts = filter_control_points(pts, q, cfg.eps_root);
    // drop points whose whole value column would round to zero at this scale
    const double log_scale = std::log(static_cast<double>(cfg.lll_scale));
    const double coef = static_cast<double>(spec.r + k) / spec.t;
    spec.control_points.clear();
    for (double x : pts) {
        double log_q = 0.0;
        for (const auto& p : state.polys)
            log_q += std::log(std::abs(eval_float(p, x)));
        double best = log_scale + log_q + k * std::max(0.0, std::log(x)) - coef * x;
        if (best > std::log(0.49)) spec.control_points.push_back(x);
    }
    if (spec.control_points.size() < static_cast<std::size_t>(k) + 1) {
        rec.error = "too few usable control points at this scale";
        rec.m_after = state.m;
        state.history.push_back(std::move(rec));
        return state;
    }

    LatticeBasis lattice = build_search_lattice(spec);
    LatticeBasis reduced = lll_reduce(LatticeBasis{lattice.rows, cfg.lll_delta});
    if (cfg.dump_lattices) state.lattice_dumps.push_back(reduced.to_text());

    // factor the candidates; collect fresh irreducible factors
    std::vector<IntPoly> fresh;
    for (const IntPoly& cand : extract_candidates(reduced, spec, cfg.candidates_per_step)) {
        for (auto& [fac, mult] : factor(cand).factors) {
            if (fac.degree() < 1 || fac.degree() > cfg.max_candidate_degree) continue;
            if (std::find(state.polys.begin(), state.polys.end(), fac) != state.polys.end())
                continue;
            if (std::find(fresh.begin(), fresh.end(), fac) != fresh.end()) continue;
            fresh.push_back(fac);
        }
    }
    if (fresh.empty()) {
        rec.fruitful = false;
        rec.m_after = state.m;
        state.history.push_back(std::move(rec));
        return state;
    }

    std::vector<IntPoly> trial = state.polys;
    trial.insert(trial.end(), fresh.begin(), fresh.end());
    std::vector<double> init = state.minima;
    for (double x : uniform_points(cfg.interval_cap, 64)) init.push_back(x);
    SilpResult res = silp_optimize(trial, init, cfg.stop_tol);

    // admit only if the optimum did not regress (weights of new polynomials
    // may simply come back zero)
    if (res.m < state.m - 1e-9) {
        rec.fruitful = false;
        rec.m_after = state.m;
        rec.error = "re-optimization regressed; step discarded";
        state.history.push_back(std::move(rec));
        return state;
    }

    std::vector<IntPoly> new_polys;
    std::vector<double> new_weights;
    for (std::size_t j = 0; j < trial.size(); ++j) {
        double w = res.af.terms()[j].weight;
        if (w < cfg.weight_floor) {
            if (j < state.polys.size()) rec.evicted.push_back(trial[j]);
            continue;
        }
        new_polys.push_back(trial[j]);
        new_weights.push_back(w);
        if (j >= state.polys.size()) rec.admitted.push_back(trial[j]);
    }
    rec.fruitful = !rec.admitted.empty();
    if (!rec.fruitful) {
        // nothing new earned weight: the polynomial set stays untouched
        rec.evicted.clear();
        rec.m_after = state.m;
        state.history.push_back(std::move(rec));
        return state;
    }
    state.polys = std::move(new_polys);
    state.weights = std::move(new_weights);
    state.m = res.m;
    state.minima = local_minima(res.af, 1e-7);
    rec.m_after = state.m;
    state.history.push_back(std::move(rec));
    return state;
}

SearchState run_sweep(SearchState state, const SearchConfig& cfg) {
    if (cfg.k_min < 1 || cfg.k_min > cfg.k_max)
        throw std::invalid_argument("sweep requires 1 <= k_min <= k_max");
    for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
        SearchState backup = state;
        try {
            state = search_step(std::move(state), k, cfg);
        } catch (const std::exception& e) {
            state = std::move(backup);
            StepRecord rec;
            rec.k = k;
            rec.m_before = rec.m_after = state.m;
            rec.error = e.what();
            state.history.push_back(std::move(rec));
        }
    }
    return state;
}

std::string serialize_state(const SearchState& state) {
    std::ostringstream os;
    os.precision(17);
    os << "catalog search-state\n";
    os << "bound " << state.m << "\n";
    for (std::size_t j = 0; j < state.polys.size(); ++j) {
        const IntPoly& p = state.polys[j];
        os << "poly " << p.degree();
        for (int i = 0; i <= p.degree(); ++i) os << ' ' << p.coeff(i).get_str();
        os << " weight " << state.weights[j] << "\n";
    }
    return os.str();
}

SearchState load_state(const std::string& text) {
    SearchState st;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "bound") {
            ls >> st.m;
        } else if (tag == "poly") {
            int deg;
            ls >> deg;
            std::vector<Int> coeffs(static_cast<std::size_t>(deg) + 1);
            for (auto& c : coeffs) {
                std::string s;
                ls >> s;
                c = Int(s);
            }
            std::string kw;
            double w;
            ls >> kw >> w;
            if (kw != "weight") throw std::invalid_argument("malformed state line: " + line);
            st.polys.emplace_back(std::move(coeffs));
            st.weights.push_back(w);
        }
    }
    if (st.polys.empty()) throw std::invalid_argument("state file holds no polynomials");
    return st;
}

std::string history_json(const SearchState& state) {
    std::ostringstream os;
    os.precision(17);
    os << "{\"m\":" << state.m << ",\"steps\":[";
    for (std::size_t i = 0; i < state.history.size(); ++i) {
        const StepRecord& r = state.history[i];
        if (i) os << ',';
        os << "{\"k\":" << r.k << ",\"m_before\":" << r.m_before << ",\"m_after\":" << r.m_after
           << ",\"fruitful\":" << (r.fruitful ? "true" : "false") << ",\"admitted\":[";
        for (std::size_t a = 0; a < r.admitted.size(); ++a) {
            if (a) os << ',';
            os << '"' << r.admitted[a].to_string() << '"';
        }
        os << "],\"evicted\":[";
        for (std::size_t a = 0; a < r.evicted.size(); ++a) {
            if (a) os << ',';
            os << '"' << r.evicted[a].to_string() << '"';
        }
        os << "]";
        if (!r.error.empty()) {
            os << ",\"error\":\"";
            for (char ch : r.error)
                if (ch == '"' || ch == '\\')
                    os << '\\' << ch;
                else
                    os << ch;
            os << '"';
        }
        os << "}";
    }
    os << "]}";
    return os.str();
}

}  // namespace traceforge
