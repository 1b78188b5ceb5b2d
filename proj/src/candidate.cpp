#include "fano/candidate.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace fano {

using ojson = nlohmann::ordered_json;

BasketEntry BasketEntry::normalized(int r, int a, int count) {
    BasketEntry e{r, a, count};
    if (r > 0) {
        int m = static_cast<int>(residue(a, r));
        e.a = m == r ? 0 : std::min(m, r - m);
    }
    return e;
}

bool BasketEntry::terminal() const { return r >= 2 && a > 0 && a < r && std::gcd(a, r) == 1; }

std::string BasketEntry::type_str() const {
    return "1/" + std::to_string(r) + "(1," + std::to_string(a) + "," + std::to_string(r - a) + ")";
}

std::string to_string(CenterKind k) {
    switch (k) {
        case CenterKind::Curve: return "curve";
        case CenterKind::SmoothPoint: return "smooth-point";
        case CenterKind::QuotientPoint: return "quotient-point";
    }
    return "?";
}

std::string CenterSpec::label() const {
    switch (kind) {
        case CenterKind::Curve: return "curves";
        case CenterKind::SmoothPoint: return "smooth-points";
        case CenterKind::QuotientPoint: return basket_ref ? basket_ref->type_str() : "quotient-point";
    }
    return "?";
}

int FanoCandidate::basket_size() const {
    int n = 0;
    for (const auto& b : basket) n += b.count;
    return n;
}

int FanoCandidate::basket_count(int r) const {
    int n = 0;
    for (const auto& b : basket)
        if (b.r == r) n += b.count;
    return n;
}

std::vector<std::string> validate(const FanoCandidate& c) {
    std::vector<std::string> out;
    for (std::size_t j = 0; j < c.space.size(); ++j) {
        int g = c.space.gcd_of(c.space.all().without(j));
        if (g != 1)
            out.push_back("not well-formed: weights omitting '" + c.space.name(j) + "' have gcd " + std::to_string(g));
    }
    for (const auto& b : c.basket) {
        if (b.count <= 0) out.push_back("basket entry " + b.type_str() + ": count must be positive");
        if (!b.terminal()) {
            std::string why = b.r < 2 ? "index below 2"
                                      : "gcd(" + std::to_string(b.a) + "," + std::to_string(b.r) + ")=" +
                                            std::to_string(std::gcd(b.a, b.r)) + " is not 1";
            out.push_back("non-terminal basket entry " + b.type_str() + ": " + why);
        }
    }
    if (c.k3.sign() <= 0) out.push_back("k3 must be positive, got " + c.k3.str());
    for (std::size_t i = 0; i < c.eq_degrees.size(); ++i) {
        if (c.eq_degrees[i] <= 0) out.push_back("equation degree " + std::to_string(c.eq_degrees[i]) + " is not positive");
        if (i > 0 && c.eq_degrees[i] < c.eq_degrees[i - 1]) out.push_back("eq_degrees not sorted non-decreasing");
    }
    return out;
}

namespace {

std::string line_col(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

struct FieldReader {
    std::vector<std::string> diags;

    const ojson* get(const ojson& obj, const std::string& key, const std::string& path) {
        if (!obj.is_object()) {
            diags.push_back("field '" + path + "': expected object");
            return nullptr;
        }
        auto it = obj.find(key);
        if (it == obj.end()) {
            diags.push_back("field '" + (path.empty() ? key : path + "." + key) + "': missing");
            return nullptr;
        }
        return &*it;
    }

    std::optional<long> integer(const ojson& obj, const std::string& key, const std::string& path) {
        const ojson* v = get(obj, key, path);
        if (!v) return std::nullopt;
        if (!v->is_number_integer()) {
            diags.push_back("field '" + (path.empty() ? key : path + "." + key) + "': expected integer");
            return std::nullopt;
        }
        return v->get<long>();
    }
};

}  // namespace

FanoCandidate parse_candidate(std::string_view text) {
    ojson j;
    try {
        j = ojson::parse(text.begin(), text.end());
    } catch (const ojson::parse_error& e) {
        throw CandidateError("candidate JSON parse error", {line_col(text, e.byte) + ": " + e.what()});
    }
    FieldReader rd;
    FanoCandidate c;
    if (!j.is_object()) throw CandidateError("candidate JSON invalid", {"top level: expected object"});

    if (const ojson* id = rd.get(j, "id", "")) {
        if (id->is_string()) c.id = id->get<std::string>();
        else rd.diags.push_back("field 'id': expected string");
    }
    std::vector<Coordinate> coords;
    if (const ojson* ws = rd.get(j, "weights", "")) {
        if (!ws->is_array()) rd.diags.push_back("field 'weights': expected array");
        else
            for (std::size_t i = 0; i < ws->size(); ++i) {
                std::string path = "weights[" + std::to_string(i) + "]";
                const ojson& w = (*ws)[i];
                Coordinate co;
                if (const ojson* n = rd.get(w, "name", path)) {
                    if (n->is_string()) co.name = n->get<std::string>();
                    else rd.diags.push_back("field '" + path + ".name': expected string");
                }
                if (auto v = rd.integer(w, "weight", path)) co.weight = static_cast<int>(*v);
                coords.push_back(co);
            }
    }
    if (const ojson* ds = rd.get(j, "eq_degrees", "")) {
        if (!ds->is_array()) rd.diags.push_back("field 'eq_degrees': expected array");
        else
            for (std::size_t i = 0; i < ds->size(); ++i) {
                if ((*ds)[i].is_number_integer()) c.eq_degrees.push_back((*ds)[i].get<int>());
                else rd.diags.push_back("field 'eq_degrees[" + std::to_string(i) + "]': expected integer");
            }
    }
    if (const ojson* k = rd.get(j, "k3", "")) {
        auto num = rd.integer(*k, "num", "k3");
        auto den = rd.integer(*k, "den", "k3");
        if (num && den) {
            if (*den == 0) rd.diags.push_back("field 'k3.den': must be nonzero");
            else c.k3 = Rational(*num, *den);
        }
    }
    if (const ojson* bs = rd.get(j, "basket", "")) {
        if (!bs->is_array()) rd.diags.push_back("field 'basket': expected array");
        else
            for (std::size_t i = 0; i < bs->size(); ++i) {
                std::string path = "basket[" + std::to_string(i) + "]";
                auto r = rd.integer((*bs)[i], "r", path);
                auto a = rd.integer((*bs)[i], "a", path);
                auto n = rd.integer((*bs)[i], "count", path);
                if (r && a && n) {
                    if (*r < 1) rd.diags.push_back("field '" + path + ".r': must be positive");
                    else c.basket.push_back(BasketEntry::normalized(static_cast<int>(*r), static_cast<int>(*a),
                                                                    static_cast<int>(*n)));
                }
            }
    }
    if (rd.diags.empty()) {
        try {
            c.space = WeightedSpace(coords);
        } catch (const std::exception& e) {
            rd.diags.push_back(std::string("field 'weights': ") + e.what());
        }
    }
    if (!rd.diags.empty()) throw CandidateError("candidate JSON invalid", rd.diags);
    auto v = validate(c);
    if (!v.empty()) throw CandidateError("candidate '" + c.id + "' fails validation", v);
    return c;
}

FanoCandidate load_candidate(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CandidateError("cannot open candidate file", {path.string() + ": cannot open"});
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_candidate(ss.str());
    } catch (const CandidateError& e) {
        std::vector<std::string> d;
        for (const auto& s : e.diagnostics()) d.push_back(path.string() + ": " + s);
        throw CandidateError(e.what(), d);
    }
}

std::string serialize(const FanoCandidate& c) {
    ojson j;
    j["id"] = c.id;
    j["weights"] = ojson::array();
    for (const auto& co : c.space.coords()) j["weights"].push_back(ojson{{"name", co.name}, {"weight", co.weight}});
    j["eq_degrees"] = c.eq_degrees;
    j["k3"] = ojson{{"num", c.k3.num().get_si()}, {"den", c.k3.den().get_si()}};
    j["basket"] = ojson::array();
    for (const auto& b : c.basket) j["basket"].push_back(ojson{{"r", b.r}, {"a", b.a}, {"count", b.count}});
    return j.dump(2) + "\n";
}

namespace {

FanoCandidate make(std::string id, std::vector<Coordinate> coords, std::vector<int> degrees, Rational k3,
                   std::vector<BasketEntry> basket) {
    return FanoCandidate{std::move(id), WeightedSpace(std::move(coords)), std::move(degrees), std::move(k3),
                         std::move(basket)};
}

std::vector<RegistryEntry> build_registry() {
    std::vector<RegistryEntry> reg;
    reg.push_back({"#25", true, "",
                   make("#25",
                        {{"p", 2}, {"q", 5}, {"r", 6}, {"s", 7}, {"t", 8}, {"u", 9}, {"v", 10}, {"w", 11}},
                        {16, 17, 18, 18, 19, 20, 20, 21, 22}, Rational(1, 70),
                        {BasketEntry::normalized(2, 1, 7), BasketEntry::normalized(5, 1, 1),
                         BasketEntry::normalized(7, 2, 1)})});
    reg.push_back({"#166", true, "",
                   make("#166",
                        {{"p", 2}, {"q", 2}, {"r", 3}, {"s", 3}, {"t", 4}, {"u", 4}, {"v", 5}, {"w", 5}},
                        {8, 8, 8, 9, 9, 9, 10, 10, 10}, Rational(1, 6),
                        {BasketEntry::normalized(2, 1, 11), BasketEntry::normalized(3, 1, 1)})});
    reg.push_back({"#282", true, "",
                   make("#282",
                        {{"p", 1}, {"q", 6}, {"r", 6}, {"s", 7}, {"t", 8}, {"u", 9}, {"v", 10}, {"w", 11}},
                        {16, 17, 18, 18, 19, 20, 20, 21, 22}, Rational(1, 42),
                        {BasketEntry::normalized(2, 1, 2), BasketEntry::normalized(3, 1, 2),
                         BasketEntry::normalized(6, 1, 1), BasketEntry::normalized(7, 1, 1)})});
    reg.push_back({"#308", true, "",
                   make("#308",
                        {{"p", 1}, {"q", 5}, {"r", 6}, {"s", 6}, {"t", 7}, {"u", 8}, {"v", 9}, {"w", 10}},
                        {14, 15, 16, 16, 17, 18, 18, 19, 20}, Rational(1, 30),
                        {BasketEntry::normalized(2, 1, 1), BasketEntry::normalized(3, 1, 1),
                         BasketEntry::normalized(5, 2, 1), BasketEntry::normalized(6, 1, 2)})});
    reg.push_back({"#29374", false,
                   "not analyzable by this engine: smooth Fano 3-fold of degree 10 in P^7, "
                   "not birationally rigid",
                   std::nullopt});
    reg.push_back({"#78", false,
                   "not analyzable by this engine: codimension-6 candidate whose existence is not known",
                   std::nullopt});
    return reg;
}

std::string normalize_id(std::string_view id) {
    std::string s(id);
    if (!s.empty() && s.front() != '#') s = "#" + s;
    return s;
}

}  // namespace

const std::vector<RegistryEntry>& registry_entries() {
    static const std::vector<RegistryEntry> reg = build_registry();
    return reg;
}

const RegistryEntry* find_registry(std::string_view id) {
    auto key = normalize_id(id);
    for (const auto& e : registry_entries())
        if (e.id == key) return &e;
    return nullptr;
}

FanoCandidate registry(std::string_view id) {
    const RegistryEntry* e = find_registry(id);
    if (!e) throw CandidateError("unknown candidate id", {"unknown registry id '" + std::string(id) + "'"});
    if (!e->analyzable || !e->candidate) throw CandidateError("candidate not analyzable", {e->id + ": " + e->note});
    return *e->candidate;
}

bool matches_registry(const FanoCandidate& c) {
    const RegistryEntry* e = find_registry(c.id);
    return e && e->candidate && *e->candidate == c;
}

}  // namespace fano
