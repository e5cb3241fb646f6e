#include "pdm/catalog.hpp"

#include "embedded_data.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>

namespace pdm::catalog {

using namespace pdm::sym;
using report::VerificationReport;

namespace {

struct Data {
    std::vector<CatalogEntry> entries;
    std::map<std::string, std::map<int, std::vector<std::string>>> bodies;  // name -> arity -> bodies
};

std::vector<conf::Combo> read_integrals(const nlohmann::json& j)
{
    std::vector<conf::Combo> out;
    for (const auto& c : j)
        out.push_back(conf::combo_from_json(c));
    return out;
}

const Data& data()
{
    static const Data d = [] {
        Data d;
        auto j = nlohmann::json::parse(pdm::data::catalog_json);
        for (const auto& [name, by_arity] : j.at("instantiations").items())
            for (const auto& [ar, list] : by_arity.items())
                d.bodies[name][std::stoi(ar)] = list.get<std::vector<std::string>>();
        for (const auto& r : j.at("entries")) {
            CatalogEntry e;
            e.id = r.at("id").get<int>();
            Defs defs;
            if (r.contains("defs"))
                for (const auto& [k, v] : r.at("defs").items())
                    defs[k] = parse(v.get<std::string>());
            e.f = parse(r.at("f").get<std::string>(), defs);
            e.V = parse(r.at("V").get<std::string>(), defs);
            e.integrals = read_integrals(r.at("integrals"));
            if (r.contains("params"))
                e.params = r.at("params").get<std::vector<std::string>>();
            if (r.contains("functions"))
                e.functions = r.at("functions").get<std::map<std::string, int>>();
            e.notes = r.value("note", "");
            e.rational = r.value("rational", false);
            if (r.contains("variants"))
                for (const auto& v : r.at("variants")) {
                    Encoding enc{v.at("label").get<std::string>(), e.f, e.V, e.integrals,
                                 v.value("reason", "")};
                    if (v.contains("f"))
                        enc.f = parse(v.at("f").get<std::string>(), defs);
                    if (v.contains("V"))
                        enc.V = parse(v.at("V").get<std::string>(), defs);
                    if (v.contains("integrals"))
                        enc.integrals = read_integrals(v.at("integrals"));
                    e.variants.push_back(std::move(enc));
                }
            d.entries.push_back(std::move(e));
        }
        return d;
    }();
    return d;
}

bool op_is_zero(const ops::SecondOrderOp& s)
{
    for (const auto& c : s.slots())
        if (!proved_zero(c))
            return false;
    return true;
}

// ProvedZero when every slot is; otherwise the first non-zero slot or the numeric summary.
ZeroStatus op_zero_status(const ops::SecondOrderOp& s, const ZeroTestPolicy& policy)
{
    if (op_is_zero(s)) {
        ZeroStatus z;
        z.kind = ZeroStatus::ProvedZero;
        return z;
    }
    ZeroStatus worst;
    worst.kind = ZeroStatus::NumericZero;
    for (const auto& c : s.slots()) {
        ZeroStatus z = is_zero(c, policy);
        if (!z.is_zero())
            return z;
        if (z.kind == ZeroStatus::NumericZero) {
            worst.points = std::max(worst.points, z.points);
            worst.max_residual = std::max(worst.max_residual, z.max_residual);
        }
    }
    return worst;
}

// Symbolic attempt first; content beyond rational functions also gets a numeric record.
void zero_records(VerificationReport& rep, const Expr& e, const ZeroTestPolicy& policy,
                  const std::string& entry, const std::string& integral, const std::string& check,
                  bool force_numeric)
{
    ZeroStatus z = is_zero(e, policy);
    rep.add(report::from_zero(z, entry, integral, check));
    if (force_numeric && z.kind == ZeroStatus::ProvedZero)
        rep.add(report::from_zero(numeric_zero_test(e, policy), entry, integral, check));
}

Expr instantiate(const Expr& e, const std::vector<std::pair<std::string, FunctionDef>>& defs)
{
    Expr r = e;
    for (const auto& [name, def] : defs)
        r = substitute_function(r, name, def);
    return r;
}

// Matches each listed integral to +-(element of the realization) and compares brackets.
void relabel_check(VerificationReport& rep, const std::string& entry, const std::vector<conf::Combo>& ints,
                   const conf::Basis& b, const conf::BracketTable& t, const std::string& table_name)
{
    std::vector<conf::Coords> rc;
    for (const auto& q : b.ops)
        rc.push_back(conf::decompose(q));
    std::vector<std::pair<int, int>> map;  // (index, sign)
    for (const auto& c : ints) {
        conf::Coords v = conf::coords_of(conf::killing_params(c));
        int found = -1, sign = 0;
        for (std::size_t k = 0; k < rc.size() && found < 0; ++k)
            for (int s : {1, -1}) {
                bool eq = true;
                for (int i = 0; i < conf::kCoords && eq; ++i)
                    eq = proved_zero(v[i] - Expr(long(s)) * rc[k][i]);
                if (eq) {
                    found = int(k);
                    sign = s;
                    break;
                }
            }
        if (found < 0) {
            rep.fail(entry, "relabel to " + table_name, "symbolic", conf::combo_name(c) + " not in the realization");
            return;
        }
        map.emplace_back(found, sign);
    }
    bool ok = true;
    for (std::size_t i = 0; i < ints.size(); ++i)
        for (std::size_t j = i + 1; j < ints.size(); ++j) {
            auto got = conf::decompose(ops::commute_qq(conf::generator(ints[i]), conf::generator(ints[j])));
            auto coef = t(map[i].first, map[j].first);
            long s = map[i].second * map[j].second;
            for (int c = 0; c < conf::kCoords && ok; ++c) {
                std::vector<Expr> terms{got[c]};
                for (std::size_t k = 0; k < coef.size(); ++k)
                    terms.push_back(Expr(-s) * coef[k] * rc[k][c]);
                ok = proved_zero(add(std::move(terms)));
            }
        }
    if (ok)
        rep.pass(entry, "structure constants match " + table_name, "symbolic");
    else
        rep.fail(entry, "structure constants match " + table_name, "symbolic");
}

}  // namespace

const std::vector<CatalogEntry>& entries() { return data().entries; }

const CatalogEntry& entry(int id)
{
    if (id < 1 || id > kEntries)
        throw std::out_of_range("catalog entry " + std::to_string(id) + " out of range 1..18");
    return data().entries.at(id - 1);
}

std::vector<std::pair<std::string, FunctionDef>> instantiation(const CatalogEntry& e, int k)
{
    std::vector<std::pair<std::string, FunctionDef>> out;
    for (const auto& [name, arity] : e.functions) {
        const auto& list = data().bodies.at(name).at(arity);
        FunctionDef def;
        def.args = arity == 1 ? std::vector<std::string>{"u"} : std::vector<std::string>{"u", "w"};
        def.body = parse(list.at(k % list.size()));
        out.emplace_back(name, def);
    }
    return out;
}

VerificationReport verify_encoding(const CatalogEntry& e, const Encoding& enc, const ZeroTestPolicy& policy)
{
    VerificationReport rep;
    std::string id = "line " + std::to_string(e.id);
    rep.title = "catalog " + id + (enc.label == "verbatim" ? "" : " (" + enc.label + ")");
    ops::PDMHamiltonian h{enc.f, enc.V};
    bool exact = e.rational;

    for (const auto& c : enc.integrals) {
        std::string name = conf::combo_name(c);
        auto [r1, r2] = ops::reduced_determining(h, conf::killing_params(c));
        zero_records(rep, r1, policy, id, name, "mass equation", !exact);
        zero_records(rep, r2, policy, id, name, "potential equation", !exact);
        if (exact) {
            auto comm = ops::commute_hq(h, conf::generator(c));
            if (op_is_zero(comm)) {
                rep.pass(id, "[H,Q] = 0", "symbolic");
                rep.checks.back().integral = name;
            } else {
                rep.fail(id, "[H,Q] = 0", "symbolic", ops::to_text(comm));
                rep.checks.back().integral = name;
            }
        }
    }

    if (!e.functions.empty()) {
        for (int k = 0; k < 3; ++k) {
            auto defs = instantiation(e, k);
            ops::PDMHamiltonian hk{instantiate(enc.f, defs), instantiate(enc.V, defs)};
            bool rat = !has_transcendental(hk.f) && !has_transcendental(hk.V);
            std::string tag = "instantiation " + std::to_string(k + 1);
            for (const auto& c : enc.integrals) {
                std::string name = conf::combo_name(c);
                if (rat) {
                    auto comm = ops::commute_hq(hk, conf::generator(c));
                    rep.add(report::from_zero(op_zero_status(comm, policy), id, name, tag + " [H,Q] = 0"));
                } else {
                    auto [r1, r2] = ops::reduced_determining(hk, conf::killing_params(c));
                    rep.add(report::from_zero(numeric_zero_test(r1, policy), id, name, tag + " mass equation"));
                    rep.add(report::from_zero(numeric_zero_test(r2, policy), id, name, tag + " potential equation"));
                }
            }
        }
    }

    std::vector<conf::Coords> cs;
    for (const auto& c : enc.integrals)
        cs.push_back(conf::coords_of(conf::killing_params(c)));
    for (std::size_t i = 0; i < enc.integrals.size(); ++i)
        for (std::size_t j = i + 1; j < enc.integrals.size(); ++j) {
            std::string label = "closure [" + conf::combo_name(enc.integrals[i]) + ", " +
                                conf::combo_name(enc.integrals[j]) + "]";
            auto w = conf::decompose(ops::commute_qq(conf::generator(enc.integrals[i]),
                                                     conf::generator(enc.integrals[j])));
            if (conf::solve_in_span(cs, w))
                rep.pass(id, label, "symbolic");
            else
                rep.fail(id, label, "symbolic", "bracket leaves the span of the listed integrals");
        }
    if (e.id == 16)
        relabel_check(rep, id, enc.integrals, conf::so4_realization(), conf::so4_table(), "so(4) table");
    if (e.id == 17)
        relabel_check(rep, id, enc.integrals, conf::so13_realization(), conf::so13_table(), "so(1,3) table");
    return rep;
}

VerificationReport verify_entry(int id, const ZeroTestPolicy& policy)
{
    const CatalogEntry& e = entry(id);
    VerificationReport rep = verify_encoding(e, e.verbatim(), policy);
    if (rep.passed() || e.variants.empty())
        return rep;
    for (const auto& v : e.variants) {
        VerificationReport vr = verify_encoding(e, v, policy);
        if (!vr.passed())
            continue;
        VerificationReport out;
        out.title = rep.title;
        for (auto c : rep.checks) {
            if (c.status == "fail") {
                c.status = "annotation";
                c.detail = "verbatim row fails" + (c.detail.empty() ? "" : ": " + c.detail);
            }
            out.add(c);
        }
        out.annotate("line " + std::to_string(id), "variant " + v.label, v.reason);
        out.append(vr);
        return out;
    }
    return rep;
}

std::vector<VerificationReport> verify_all(const ZeroTestPolicy& policy, int jobs)
{
    entries();  // parse once before fanning out
    std::vector<VerificationReport> out(kEntries);
    std::atomic<int> next{1};
    auto work = [&] {
        for (int id = next++; id <= kEntries; id = next++)
            out[id - 1] = verify_entry(id, policy);
    };
    jobs = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int k = 1; k < jobs; ++k)
        pool.emplace_back(work);
    work();
    for (auto& t : pool)
        t.join();
    return out;
}

std::pair<Expr, Expr> flow_residual(const ops::PDMHamiltonian& h, int k, long s, bool shifted)
{
    auto flow = [&](const Expr& g) {
        Expr radial = add({x(1) * diff(g, 1), x(2) * diff(g, 2),
                           (shifted ? x(3) - Expr(1L) : x(3)) * diff(g, 3)});
        Expr coef = r2() + Expr(s) - (shifted ? Expr(2L) * x(3) : Expr(0L));
        return Expr(2L) * x(k) * radial - coef * diff(g, k);
    };
    return {flow(h.f) - Expr(4L) * x(k) * h.f, flow(h.V) - Expr(3L) * diff(h.f, k)};
}

const std::vector<std::string>& worked_families()
{
    static const std::vector<std::string> n = {"de7_family", "ff_family", "de13_family", "fV1"};
    return n;
}

namespace {

struct FamilyCheck {
    std::string label;
    Expr residual;
    bool required;  // printed alternatives are not required
};

}  // namespace

VerificationReport verify_worked_family(const std::string& name, const ZeroTestPolicy& policy)
{
    Defs d;
    d["um"] = parse("(/ (- $r2 1) $rt)");
    d["up"] = parse("(/ (+ $r2 1) $rt)");
    d["t"] = parse("(/ x2 x1)");
    d["v"] = parse("(/ (- $r2 1) x1)");
    auto P = [&](const char* s) { return parse(s, d); };
    std::vector<FamilyCheck> checks;
    std::vector<std::pair<std::string, ops::SecondOrderOp>> op_checks;
    auto pair_checks = [&](const std::string& tag, std::pair<Expr, Expr> r, bool required) {
        checks.push_back({tag + " mass", r.first, required});
        checks.push_back({tag + " potential", r.second, required});
    };

    if (name == "de7_family") {
        ops::PDMHamiltonian minus{P("(* $rt2 (F $t $um))"), P("(+ (* 3 $rt (D (2) F $t $um)) (Ft $t $um))")};
        ops::PDMHamiltonian plus{P("(* $rt2 (F $t $up))"), P("(+ (* 3 $rt (D (2) F $t $up)) (Ft $t $up))")};
        pair_checks("(r^2-1)/rt solution in the M03 flow equation", flow_residual(minus, 3, 1, false), true);
        pair_checks("(r^2+1)/rt solution in the M03 flow equation", flow_residual(plus, 3, 1, false), false);
    } else if (name == "ff_family") {
        ops::PDMHamiltonian h{P("(* $rt2 (F $um))"), P("(+ (* 3 $rt (D (1) F $um)) (Ft $um))")};
        pair_checks("M03 flow equation", flow_residual(h, 3, 1, false), true);
        checks.push_back({"M21 mass", x(2) * diff(h.f, 1) - x(1) * diff(h.f, 2), true});
        checks.push_back({"M21 potential", x(2) * diff(h.V, 1) - x(1) * diff(h.V, 2), true});
        ops::PDMHamiltonian one{P("$rt2"), P("(Ft $um)")};
        for (const char* g : {"M03", "M21"}) {
            op_checks.emplace_back(std::string("F = 1 specialization [H,") + g + "] = 0",
                                   ops::commute_hq(one, conf::generator(conf::GeneratorId::parse(g))));
        }
    } else if (name == "de13_family") {
        ops::PDMHamiltonian h{P("(* (^ x1 2) (F $v))"), P("(+ (* 3 x1 (D (1) F $v)) (Ft $v))")};
        pair_checks("M03 flow equation", flow_residual(h, 3, 1, false), true);
        pair_checks("M03 + M32 - M02 equation with r^2+1-2x3", flow_residual(h, 2, 1, true), true);
        pair_checks("M03 + M32 - M02 equation as printed (r^2-1-2x3)", flow_residual(h, 2, -1, true), false);
    } else if (name == "fV1") {
        ops::PDMHamiltonian h{P("(* mu (^ (- $r2 1) 2))"), P("(+ (* 6 mu $r2) nu)")};
        auto [a, b] = ops::reduced_determining(h, conf::killing_params(conf::GeneratorId::M(0, 3)));
        checks.push_back({"M03 mass equation", a, true});
        checks.push_back({"M03 potential equation", b, true});
        pair_checks("M03 flow equation", flow_residual(h, 3, 1, false), true);
        pair_checks("M32 - M02 equation with r^2+1-2x3", flow_residual(h, 2, 1, true), true);
        pair_checks("M31 - M01 equation with r^2+1-2x3", flow_residual(h, 1, 1, true), true);
        pair_checks("M31 - M01 equation as printed (r^2-1-2x3)", flow_residual(h, 1, -1, true), false);
    } else {
        throw std::invalid_argument("unknown worked family '" + name + "'");
    }

    VerificationReport rep;
    rep.title = "worked family " + name;
    for (const auto& c : checks) {
        ZeroStatus z = is_zero(c.residual, policy);
        auto r = report::from_zero(z, name, {}, c.label);
        if (!z.is_zero() && !c.required) {
            r.status = "annotation";
            r.detail = "printed form not satisfied" + (r.detail.empty() ? "" : ": " + r.detail);
        }
        rep.add(r);
    }
    for (const auto& [label, op] : op_checks)
        rep.add(report::from_zero(op_zero_status(op, policy), name, {}, label));
    return rep;
}

}  // namespace pdm::catalog
