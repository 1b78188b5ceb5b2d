#include "fano/report.hpp"

#include <sstream>

namespace fano {

ojson report_json(const Report& r, const FanoCandidate& c) {
    ojson j;
    j["schema"] = kReportSchema;
    j["tool_version"] = r.tool_version;
    ojson basket = ojson::array();
    for (const auto& b : c.basket) basket.push_back(ojson{{"type", b.type_str()}, {"count", b.count}});
    j["candidate"] = ojson{{"id", c.id},
                           {"ambient", c.space.str()},
                           {"eq_degrees", c.eq_degrees},
                           {"k3", c.k3.str()},
                           {"basket", basket}};
    j["strategy"] = r.strategy;
    ojson opts;
    opts["isolating_product"] = r.options.isolating_product ? ojson(*r.options.isolating_product) : ojson(nullptr);
    opts["format"] = r.options.format ? ojson(to_string(*r.options.format)) : ojson(nullptr);
    opts["assume_q_in_s6"] = r.options.assume_q_in_s6;
    j["options"] = opts;
    ojson centers = ojson::array();
    for (const auto& v : r.verdicts) centers.push_back(to_json(v, c.space));
    j["centers"] = centers;
    j["verdict"] = to_string(r.overall);
    j["unresolved"] = r.unresolved;
    j["assumptions"] = r.ledger ? to_json(*r.ledger) : ojson::array();
    j["diagnostics"] = r.diagnostics;
    if (r.seconds) j["timing"] = ojson{{"seconds", *r.seconds}};
    return j;
}

namespace {

void render_verdict(std::ostream& os, const ojson& v, const std::string& indent) {
    os << indent << "[" << v["status"].get<std::string>() << "] " << v["center"].get<std::string>();
    if (v.contains("multiplicity")) os << " x" << v["multiplicity"].get<int>();
    if (v.contains("coordinate")) os << " at " << v["coordinate"].get<std::string>();
    os << ": " << v["lemma"].get<std::string>() << "\n";
    for (const auto& nv : v["values"])
        os << indent << "    " << nv["name"].get<std::string>() << " = " << nv["value"].get<std::string>() << "\n";
    for (const auto& ch : v["checks"])
        os << indent << "    check " << ch["name"].get<std::string>() << ": " << (ch["holds"].get<bool>() ? "yes" : "no")
           << "\n";
    if (v.contains("notes"))
        for (const auto& n : v["notes"]) os << indent << "    note: " << n.get<std::string>() << "\n";
    if (v.contains("split_condition"))
        os << indent << "    split: " << v["split_condition"].get<std::string>() << "\n";
    if (v.contains("branches"))
        for (const auto& b : v["branches"]) {
            os << indent << "    branch " << b["label"].get<std::string>() << "\n";
            for (const auto& a : b["assumptions"]) os << indent << "      assume " << a.get<std::string>() << "\n";
            for (const auto& f : b["normal_form"])
                os << indent << "      " << f["equation"].get<std::string>() << ": " << f["monomial"].get<std::string>()
                   << " " << f["status"].get<std::string>() << "\n";
            render_verdict(os, b["verdict"], indent + "      ");
        }
}

}  // namespace

std::string render_text(const ojson& report) {
    std::ostringstream os;
    const auto& c = report["candidate"];
    os << "fano-rigidity " << report["tool_version"].get<std::string>() << " (" << report["schema"].get<std::string>()
       << ")\n";
    os << "candidate " << c["id"].get<std::string>() << " in " << c["ambient"].get<std::string>()
       << ", (-K)^3 = " << c["k3"].get<std::string>() << "\n";
    os << "basket:";
    for (const auto& b : c["basket"]) os << " " << b["count"].get<int>() << " x " << b["type"].get<std::string>();
    os << "\nstrategy: " << report["strategy"].get<std::string>() << "\n";
    const auto& o = report["options"];
    if (!o["isolating_product"].is_null())
        os << "option: isolating product override " << o["isolating_product"].get<long>() << "\n";
    if (!o["format"].is_null()) {
        os << "option: explicit equations in " << o["format"].get<std::string>() << " format";
        if (!o["assume_q_in_s6"].get<bool>()) os << " without q in S6";
        os << "\n";
    }
    for (const auto& d : report["diagnostics"]) os << "error: " << d.get<std::string>() << "\n";
    os << "\n";
    for (const auto& v : report["centers"]) render_verdict(os, v, "");
    if (!report["assumptions"].empty()) {
        os << "\nassumptions:\n";
        for (const auto& a : report["assumptions"])
            os << "  - " << a["statement"].get<std::string>() << " (" << a["provenance"].get<std::string>() << ")\n";
    }
    os << "\nverdict: " << report["verdict"].get<std::string>();
    if (!report["unresolved"].empty()) {
        os << " [";
        bool first = true;
        for (const auto& u : report["unresolved"]) {
            os << (first ? "" : ", ") << u.get<std::string>();
            first = false;
        }
        os << "]";
    }
    os << "\n";
    if (report.contains("timing")) os << "time: " << report["timing"]["seconds"].get<double>() << " s\n";
    return os.str();
}

std::string render_verdict_text(const ojson& verdict) {
    std::ostringstream os;
    render_verdict(os, verdict, "");
    os << "certificate:\n" << verdict["certificate"].dump(2) << "\n";
    return os.str();
}

int exit_code(OverallVerdict v) {
    switch (v) {
        case OverallVerdict::Superrigid: return 0;
        case OverallVerdict::Unresolved: return 2;
        case OverallVerdict::InvalidInput: return 1;
    }
    return 1;
}

std::string registry_listing() {
    std::ostringstream os;
    for (const auto& e : registry_entries()) {
        os << e.id;
        if (e.candidate) {
            os << "  " << e.candidate->space.str() << "  (-K)^3 = " << e.candidate->k3.str() << "  basket:";
            for (const auto& b : e.candidate->basket) os << " " << b.count << " x " << b.type_str();
        }
        if (!e.note.empty()) os << "  " << e.note;
        os << "\n";
    }
    return os.str();
}

std::optional<std::size_t> find_center(const Report& r, std::string_view center) {
    const std::string want(center);
    for (std::size_t i = 0; i < r.verdicts.size(); ++i) {
        const auto& cs = r.verdicts[i].center;
        if (cs.label() == want) return i;
        if (cs.basket_ref && "1/" + std::to_string(cs.basket_ref->r) == want) return i;
    }
    return std::nullopt;
}

}  // namespace fano
