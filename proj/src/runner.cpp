#include "rif/runner.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "rif/engine.hpp"
#include "rif/limits.hpp"
#include "rif/opacity.hpp"

namespace rif {

namespace {

using json = nlohmann::ordered_json;

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto end = s.find(',', start);
        if (end == std::string::npos)
            end = s.size();
        if (end > start)
            out.push_back(s.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

std::string label_of(const AssertionSpec& a) {
    switch (a.kind) {
    case AssertionSpec::Kind::inclusion: return a.lhs + " <= " + a.rhs;
    case AssertionSpec::Kind::bsp: {
        std::string s = a.bsp + "(" + a.language + ")";
        for (const auto& [k, v] : a.options)
            s += " " + k + "=" + v;
        return s;
    }
    case AssertionSpec::Kind::opacity: return a.secret + " opaque in " + a.system + " for " + a.observer;
    case AssertionSpec::Kind::disclosure_scan:
        return "no word of " + a.secret + " up to length " + std::to_string(a.bound) + " discloses it in " + a.system +
               " for " + a.observer;
    }
    return {};
}

void absorb_trace(AssertionResult& r, const std::vector<TraceEntry>& trace) {
    for (const auto& t : trace) {
        r.states = std::max(r.states, t.states);
        r.transitions = std::max(r.transitions, t.transitions);
    }
}

void absorb(AssertionResult& r, const Nfa& n) {
    r.states = std::max(r.states, n.num_states());
    r.transitions = std::max(r.transitions, n.num_transitions());
}

void check_one(const AssertionSpec& a, const BoundModel& m, AssertionResult& r) {
    const auto& A = *m.alphabet;
    switch (a.kind) {
    case AssertionSpec::Kind::inclusion: {
        Evaluator ev(m.env);
        auto v = check({parse_expr(a.lhs), parse_expr(a.rhs)}, ev);
        absorb_trace(r, v.trace);
        r.status = v.holds ? Status::holds : Status::fails;
        if (v.witness)
            r.witness = v.witness_text;
        return;
    }
    case AssertionSpec::Kind::bsp: {
        BspParams p;
        auto set = [&](const char* key) -> std::optional<SymbolSet> {
            if (!a.options.contains(key))
                return std::nullopt;
            return A.to_set(split_commas(a.options.at(key)));
        };
        p.v_prime = set("V'");
        p.c_prime = set("C'");
        p.n_prime = set("N'");
        p.admissible = set("X");
        auto v = check_bsp(*bsp_from_name(a.bsp), m.env.languages.at(a.language), p);
        absorb_trace(r, v.trace);
        r.status = v.holds ? Status::holds : Status::fails;
        if (v.witness)
            r.witness = v.witness_text;
        return;
    }
    case AssertionSpec::Kind::opacity: {
        const auto& sys = m.env.languages.at(a.system);
        auto v = is_opaque(sys, m.env.languages.at(a.secret), m.env.observers.at(a.observer));
        absorb_trace(r, v.inclusion.trace);
        r.notes = v.warnings;
        r.status = v.opaque ? Status::holds : Status::fails;
        if (!v.opaque) {
            r.witness = A.render(*v.disclosing_word);
            r.observation = A.render(*v.observation);
        }
        return;
    }
    case AssertionSpec::Kind::disclosure_scan: {
        const auto& sys = m.env.languages.at(a.system);
        const auto& obs = m.env.observers.at(a.observer);
        const auto& secret = m.env.languages.at(a.secret);
        absorb(r, sys);
        auto found = disclosure_scan(sys, obs, secret, a.bound);
        r.status = found.empty() ? Status::holds : Status::fails;
        if (!found.empty()) {
            r.witness = A.render(found.front());
            auto obs_nfa = rif::apply(obs, found.front());
            if (auto e = is_empty(obs_nfa); e.witness)
                r.observation = A.render(e.witness->word);
            r.notes.push_back(std::to_string(found.size()) + " disclosing word(s)");
        }
        return;
    }
    }
}

std::string quote(const std::string& s) { return "\"" + s + "\""; }

std::string millis_text(double ms) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1fms", ms);
    return buf;
}

} // namespace

std::string_view status_name(Status s) {
    switch (s) {
    case Status::holds: return "HOLDS";
    case Status::fails: return "FAILS";
    case Status::error: return "ERROR";
    case Status::aborted: return "ABORTED";
    }
    return "?";
}

std::size_t Report::count(Status s) const {
    std::size_t n = 0;
    for (const auto& r : results)
        n += r.status == s;
    return n;
}

int Report::exit_code() const {
    if (count(Status::aborted))
        return 3;
    if (count(Status::error))
        return 2;
    if (count(Status::fails))
        return 1;
    return 0;
}

std::size_t default_state_limit() {
    const char* env = std::getenv("RIF_MAX_STATES");
    if (!env || !*env)
        return 0;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || env[0] == '-')
        return 0;
    return static_cast<std::size_t>(v);
}

Report run(const PropertyFile& file, const RunOptions& options) {
    Report report;
    report.results.resize(file.assertions.size());
    for (std::size_t i = 0; i < file.assertions.size(); ++i) {
        auto& r = report.results[i];
        r.index = i + 1;
        r.kind = std::string(assertion_kind_name(file.assertions[i].kind));
        r.label = label_of(file.assertions[i]);
    }

    BoundModel model;
    try {
        ScopedStateLimit limit(options.max_states);
        model = bind(file);
    } catch (const StateLimitExceeded& e) {
        for (auto& r : report.results) {
            r.status = Status::aborted;
            r.message = std::string("while building definitions: ") + e.what();
        }
        return report;
    }

    auto work = [&](std::size_t i) {
        ScopedStateLimit limit(options.max_states);
        auto& r = report.results[i];
        auto start = std::chrono::steady_clock::now();
        try {
            check_one(file.assertions[i], model, r);
        } catch (const StateLimitExceeded& e) {
            r.status = Status::aborted;
            r.message = e.what();
        } catch (const std::exception& e) {
            r.status = Status::error;
            r.message = e.what();
        }
        r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    };

    unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(file.assertions.size())));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < file.assertions.size(); ++i)
            work(i);
        return report;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < file.assertions.size(); i = next++)
                work(i);
        });
    for (auto& th : pool)
        th.join();
    return report;
}

std::string render_text(const Report& report, bool timings) {
    std::ostringstream os;
    for (const auto& r : report.results) {
        os << "[" << r.index << "] " << r.kind << " " << r.label << ": " << status_name(r.status);
        if (r.witness)
            os << " witness=" << quote(*r.witness);
        if (r.observation)
            os << " observation=" << quote(*r.observation);
        if (r.status == Status::holds || r.status == Status::fails)
            os << " states=" << r.states << " transitions=" << r.transitions;
        if (timings)
            os << " time=" << millis_text(r.millis);
        if (!r.message.empty())
            os << " reason=" << quote(r.message);
        os << "\n";
        for (const auto& n : r.notes)
            os << "    note: " << n << "\n";
    }
    os << "summary: " << report.results.size() << " assertions, " << report.count(Status::holds) << " hold, "
       << report.count(Status::fails) << " fail, " << report.count(Status::error) << " error, "
       << report.count(Status::aborted) << " aborted\n";
    return os.str();
}

std::string render_structured(const Report& report, bool timings) {
    json results = json::array();
    for (const auto& r : report.results) {
        json e;
        e["index"] = r.index;
        e["kind"] = r.kind;
        e["assertion"] = r.label;
        e["status"] = status_name(r.status);
        e["witness"] = r.witness ? json(*r.witness) : json(nullptr);
        e["observation"] = r.observation ? json(*r.observation) : json(nullptr);
        e["states"] = r.states;
        e["transitions"] = r.transitions;
        if (!r.notes.empty())
            e["notes"] = r.notes;
        if (!r.message.empty())
            e["message"] = r.message;
        if (timings)
            e["time_ms"] = r.millis;
        results.push_back(e);
    }
    json j;
    j["results"] = results;
    j["summary"] = {{"total", report.results.size()},
                    {"holds", report.count(Status::holds)},
                    {"fails", report.count(Status::fails)},
                    {"errors", report.count(Status::error)},
                    {"aborted", report.count(Status::aborted)}};
    j["exit_code"] = report.exit_code();
    return j.dump(2) + "\n";
}

} // namespace rif
