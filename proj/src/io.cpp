#include "ordref/io.hpp"

#include "ordref/fixtures.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace ordref {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error("BadJson", msg); }

const Json& field(const Json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) bad(where + " must be an object");
    auto it = j.find(key);
    if (it == j.end()) bad(where + " lacks \"" + key + "\"");
    return *it;
}

std::string text(const Json& j, const std::string& where) {
    if (!j.is_string()) bad(where + " must be a string");
    return j.get<std::string>();
}

std::vector<std::string> id_list(const Json& j, const std::string& where) {
    if (!j.is_array()) bad(where + " must be an array of ids");
    std::vector<std::string> out;
    for (const auto& x : j) out.push_back(text(x, where));
    return out;
}

Json ids_json(const ChoiceDataset& ds, const Menu& m) {
    Json out = Json::array();
    for (const auto& id : ds.ids(m)) out.push_back(id);
    return out;
}

std::string display(double x) {
    std::ostringstream s;
    s.precision(6);
    s << x;
    return s.str();
}

Json probs_json(const Lottery& l) {
    Json probs = Json::object();
    for (std::size_t i = 0; i < l.prizes->size(); ++i)
        probs[to_string(l.prizes->prizes[i])] = rational_json(l.p(static_cast<Eigen::Index>(i)));
    return probs;
}

Lottery lottery_from_json(const Json& probs, const std::shared_ptr<const PrizeSet>& x, const std::string& where) {
    if (!probs.is_object()) bad(where + " probs must be an object");
    std::vector<Rational> p(x->size());
    for (const auto& [k, v] : probs.items()) {
        auto i = x->index_of(rational_from_json(Json(k), where + " prize"));
        if (!i) bad(where + " uses prize " + k + " outside the prize set");
        p[*i] = rational_from_json(v, where + " probability of " + k);
    }
    return lottery(x, p);
}

std::vector<Alternative> alternatives_from_json(const Json& list, PayloadKind kind) {
    if (!list.is_array()) bad("\"alternatives\" must be an array");
    std::shared_ptr<const PrizeSet> prizes;
    if (kind == PayloadKind::Lottery) {
        std::set<Rational> all;
        for (const auto& a : list) {
            const auto& probs = field(field(a, "payload", "a lottery alternative"), "probs", "a lottery payload");
            if (!probs.is_object()) bad("lottery probs must be an object");
            for (const auto& [k, v] : probs.items()) all.insert(rational_from_json(Json(k), "prize"));
        }
        prizes = prize_set(std::vector<Rational>(all.begin(), all.end()));
    }
    std::vector<Alternative> out;
    for (const auto& a : list) {
        Alternative alt{text(field(a, "id", "an alternative"), "an alternative id"), std::monostate{}};
        const std::string where = "alternative '" + alt.id + "'";
        switch (kind) {
            case PayloadKind::Generic:
                if (a.contains("payload") && !a.at("payload").is_null()) bad(where + " has a payload in a generic dataset");
                break;
            case PayloadKind::Lottery:
                alt.payload = lottery_from_json(field(field(a, "payload", where), "probs", where), prizes, where);
                break;
            case PayloadKind::DatedPayment: {
                const auto& p = field(a, "payload", where);
                alt.payload = DatedPayment{rational_from_json(field(p, "amount", where), where + " amount"),
                                           rational_from_json(field(p, "time", where), where + " time")};
                break;
            }
            case PayloadKind::IncomeSplit: {
                const auto& p = field(a, "payload", where);
                alt.payload = IncomeSplit{rational_from_json(field(p, "own", where), where + " own"),
                                          rational_from_json(field(p, "other", where), where + " other")};
                break;
            }
        }
        out.push_back(std::move(alt));
    }
    return out;
}

PayloadKind kind_from_json(const Json& j) {
    try {
        return parse_kind(text(field(j, "kind", "the dataset"), "\"kind\""));
    } catch (const Error& e) {
        if (e.code() == "BadJson") throw;
        bad(e.what());
    }
}

std::optional<Rational> floor_from_json(const Json& j) {
    if (!j.contains("floor")) return std::nullopt;
    return rational_from_json(j.at("floor"), "\"floor\"");
}

}  // namespace

Json rational_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) return Rational(Integer(j.get<unsigned long long>()));
        return Rational(Integer(j.get<long long>()));
    }
    if (j.is_number()) bad(where + " is a floating-point number; write it as a string to keep it exact");
    if (!j.is_string()) bad(where + " must be a rational string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument&) {
        bad(where + " is not a rational: '" + j.get<std::string>() + "'");
    }
}

Json payload_json(const Payload& p) {
    if (const auto* l = std::get_if<Lottery>(&p)) return {{"probs", probs_json(*l)}};
    if (const auto* d = std::get_if<DatedPayment>(&p))
        return {{"amount", rational_json(d->amount)}, {"time", rational_json(d->time)}};
    if (const auto* s = std::get_if<IncomeSplit>(&p))
        return {{"own", rational_json(s->own)}, {"other", rational_json(s->other)}};
    return nullptr;
}

Json dataset_json(const ChoiceDataset& ds) {
    Json out;
    out["kind"] = to_string(ds.kind());
    if (ds.floor()) out["floor"] = rational_json(*ds.floor());
    Json alts = Json::array();
    for (const auto& a : ds.universe()) {
        Json x{{"id", a.id}};
        if (ds.kind() != PayloadKind::Generic) x["payload"] = payload_json(a.payload);
        alts.push_back(std::move(x));
    }
    out["alternatives"] = std::move(alts);
    Json obs = Json::array();
    for (const auto& o : ds.observations()) obs.push_back({{"menu", ids_json(ds, o.menu)}, {"choice", ids_json(ds, o.choice)}});
    out["observations"] = std::move(obs);
    return out;
}

ChoiceDataset dataset_from_json(const Json& j) {
    const PayloadKind kind = kind_from_json(j);
    auto alts = alternatives_from_json(field(j, "alternatives", "the dataset"), kind);
    const auto& obs = field(j, "observations", "the dataset");
    if (!obs.is_array()) bad("\"observations\" must be an array");
    std::vector<RawObservation> raw;
    for (const auto& o : obs)
        raw.push_back({id_list(field(o, "menu", "an observation"), "a menu"),
                       id_list(field(o, "choice", "an observation"), "a choice")});
    return ChoiceDataset::build(kind, std::move(alts), raw, floor_from_json(j));
}

Json order_json(const std::vector<std::string>& ids, const ReferenceOrder& order) {
    Json out = Json::array();
    for (auto i : order.ranking()) out.push_back(ids[i]);
    return out;
}

ReferenceOrder order_from_json(const Json& j, const std::vector<std::string>& ids) {
    std::vector<std::size_t> ranking;
    for (const auto& id : id_list(j, "\"order\"")) {
        auto it = std::lower_bound(ids.begin(), ids.end(), id);
        if (it == ids.end() || *it != id) bad("order names unknown alternative '" + id + "'");
        ranking.push_back(static_cast<std::size_t>(it - ids.begin()));
    }
    return ReferenceOrder(std::move(ranking));
}

Json params_json(const Params& p) {
    Json out;
    out["model"] = to_string(model_of(p));
    if (const auto* o = std::get_if<OrduParams>(&p)) {
        out["order"] = order_json(o->ids, o->order);
        Json u = Json::object();
        for (auto r : o->order.ranking()) {
            Json row = Json::object();
            for (std::size_t x = 0; x < o->ids.size(); ++x)
                row[o->ids[x]] = rational_json(o->utility(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(x)));
            u[o->ids[r]] = std::move(row);
        }
        out["utilities"] = std::move(u);
    } else if (const auto* a = std::get_if<AreuParams>(&p)) {
        Json prizes = Json::array();
        for (const auto& x : a->prizes->prizes) prizes.push_back(rational_json(x));
        out["prizes"] = std::move(prizes);
        Json lots = Json::object();
        for (std::size_t i = 0; i < a->ids.size(); ++i) lots[a->ids[i]] = {{"probs", probs_json(a->lotteries[i])}};
        out["lotteries"] = std::move(lots);
        out["order"] = order_json(a->ids, a->order);
        Json u = Json::object();
        for (auto r : a->order.ranking()) {
            Json row = Json::object();
            for (std::size_t k = 0; k < a->prizes->size(); ++k)
                row[to_string(a->prizes->prizes[k])] =
                    rational_json(a->utility(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)));
            u[a->ids[r]] = std::move(row);
        }
        out["utilities"] = std::move(u);
    } else if (const auto* t = std::get_if<PbduParams>(&p)) {
        Json L = Json::object(), D = Json::object(), u = Json::object(), delta = Json::object();
        for (const auto& [x, l] : t->L) {
            L[to_string(x)] = rational_json(l);
            u[to_string(x)] = display(std::exp(to_double(l)));
        }
        for (const auto& [r, d] : t->D) {
            D[to_string(r)] = rational_json(d);
            delta[to_string(r)] = display(std::exp(to_double(d)));
        }
        out["L"] = std::move(L);
        out["D"] = std::move(D);
        out["display"] = {{"u", std::move(u)}, {"delta", std::move(delta)}};
    } else if (const auto* s = std::get_if<FspuParams>(&p)) {
        Json v = Json::object();
        for (const auto& [r, row] : s->v) {
            Json vr = Json::object();
            for (const auto& [y, u] : row) vr[to_string(y)] = rational_json(u);
            v[to_string(r)] = std::move(vr);
        }
        out["v"] = std::move(v);
    }
    return out;
}

namespace {

std::map<Rational, Rational> rational_map(const Json& j, const std::string& where) {
    if (!j.is_object()) bad(where + " must be an object");
    std::map<Rational, Rational> out;
    for (const auto& [k, v] : j.items()) out[rational_from_json(Json(k), where + " key")] = rational_from_json(v, where);
    return out;
}

std::vector<std::string> sorted_keys(const Json& j, const std::string& where) {
    if (!j.is_object()) bad(where + " must be an object");
    std::vector<std::string> out;
    for (const auto& [k, v] : j.items()) out.push_back(k);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

Params params_from_json(const Json& j) {
    Model m;
    try {
        m = parse_model(text(field(j, "model", "the params"), "\"model\""));
    } catch (const Error& e) {
        if (e.code() == "BadJson") throw;
        bad(e.what());
    }
    switch (m) {
        case Model::Ordu: {
            OrduParams p;
            p.ids = id_list(field(j, "order", "ORDU params"), "\"order\"");
            std::sort(p.ids.begin(), p.ids.end());
            p.order = order_from_json(j.at("order"), p.ids);
            const auto& u = field(j, "utilities", "ORDU params");
            const auto n = static_cast<Eigen::Index>(p.ids.size());
            p.utility = MatrixQ::Zero(n, n);
            for (std::size_t r = 0; r < p.ids.size(); ++r) {
                const auto& row = field(u, p.ids[r], "\"utilities\"");
                for (std::size_t x = 0; x < p.ids.size(); ++x)
                    p.utility(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(x)) =
                        rational_from_json(field(row, p.ids[x], "utilities of " + p.ids[r]), "utility");
            }
            return p;
        }
        case Model::Areu: {
            AreuParams p;
            std::vector<Rational> prizes;
            const auto& pj = field(j, "prizes", "AREU params");
            if (!pj.is_array()) bad("\"prizes\" must be an array");
            for (const auto& x : pj) prizes.push_back(rational_from_json(x, "a prize"));
            p.prizes = prize_set(prizes);
            const auto& lots = field(j, "lotteries", "AREU params");
            p.ids = sorted_keys(lots, "\"lotteries\"");
            for (const auto& id : p.ids)
                p.lotteries.push_back(lottery_from_json(field(lots.at(id), "probs", "lottery " + id), p.prizes, id));
            p.order = order_from_json(field(j, "order", "AREU params"), p.ids);
            const auto& u = field(j, "utilities", "AREU params");
            p.utility = MatrixQ::Zero(static_cast<Eigen::Index>(p.ids.size()), static_cast<Eigen::Index>(prizes.size()));
            for (std::size_t r = 0; r < p.ids.size(); ++r) {
                auto row = rational_map(field(u, p.ids[r], "\"utilities\""), "utilities of " + p.ids[r]);
                for (std::size_t k = 0; k < p.prizes->size(); ++k) {
                    auto it = row.find(p.prizes->prizes[k]);
                    if (it == row.end())
                        bad("utilities of " + p.ids[r] + " lack prize " + to_string(p.prizes->prizes[k]));
                    p.utility(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = it->second;
                }
            }
            return p;
        }
        case Model::Pbdu:
            return PbduParams{rational_map(field(j, "L", "PBDU params"), "\"L\""),
                              rational_map(field(j, "D", "PBDU params"), "\"D\"")};
        case Model::Fspu: {
            FspuParams p;
            const auto& v = field(j, "v", "FSPU params");
            if (!v.is_object()) bad("\"v\" must be an object");
            for (const auto& [k, row] : v.items())
                p.v[rational_from_json(Json(k), "a Gini key")] = rational_map(row, "v at Gini " + k);
            return p;
        }
    }
    bad("unknown model");
}

Json witness_json(const ChoiceDataset& ds, const ViolationWitness& w) {
    Json obs = Json::array();
    for (const auto& m : w.menus) {
        Json o{{"menu", ids_json(ds, m)}};
        if (auto i = ds.find(m)) o["choice"] = ids_json(ds, ds.choice(*i));
        obs.push_back(std::move(o));
    }
    return {{"kind", w.kind}, {"narrative", w.narrative}, {"observations", std::move(obs)}};
}

Json mismatch_json(const ChoiceDataset& ds, const Mismatch& m) {
    return {{"menu", ids_json(ds, m.menu)}, {"predicted", ids_json(ds, m.predicted)}, {"observed", ids_json(ds, m.observed)}};
}

MenusFile menus_from_json(const Json& j) {
    MenusFile out;
    const auto& menus = field(j, "menus", "the menus file");
    if (!menus.is_array()) bad("\"menus\" must be an array");
    for (const auto& m : menus) out.menus.push_back(id_list(m, "a menu"));
    if (j.contains("alternatives")) {
        const PayloadKind kind = kind_from_json(j);
        auto alts = alternatives_from_json(j.at("alternatives"), kind);
        // validates payloads and ids, and sorts the universe
        auto ds = ChoiceDataset::build(kind, std::move(alts), {}, floor_from_json(j));
        out.universe = ds.universe();
        out.floor = ds.floor();
    }
    return out;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("BadPath", "cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        bad(path + ": " + e.what());
    }
}

ChoiceDataset load_dataset(const std::string& source) {
    const std::string scheme = "fixtures://";
    if (source.rfind(scheme, 0) == 0) return fixture_dataset(source.substr(scheme.size()));
    return dataset_from_json(read_json_file(source));
}

}  // namespace ordref
