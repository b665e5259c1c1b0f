#pragma once

// JSON (de)serialization for fields, sequences and results. Rationals are
// always "p/q" strings, number-field elements are coordinate lists (plain
// strings over Q), and emission order is fixed so identical inputs produce
// byte-identical payloads.

#include <string>
#include <vector>

#include "json.hpp"
#include "recseq/c2finite.hpp"

namespace recseq {

using Json = nlohmann::ordered_json;

// ------------------------------------------------------------------ emit ---

inline Json rat_to_json(const Rat& q) { return rat_to_string(q); }

inline Json interval_to_json(const RatInterval& iv) { return Json::array({rat_to_string(iv.lo), rat_to_string(iv.hi)}); }

inline Json box_to_json(const Box& b) {
    Json j;
    j["re"] = interval_to_json(b.re);
    j["im"] = interval_to_json(b.im);
    return j;
}

inline Json field_to_json(const FieldPtr& f) {
    Json j;
    Json mp = Json::array();
    for (int i = 0; i <= f->minpoly().degree(); ++i) mp.push_back(rat_to_string(f->minpoly().coeff(i)));
    j["minpoly"] = mp;
    j["root_box"] = box_to_json(f->root_box());
    return j;
}

inline Json nf_to_json(const NFElement& a) {
    if (a.field()->degree() == 1) return rat_to_string(a.coords()[0]);
    Json j = Json::array();
    for (const auto& c : a.coords()) j.push_back(rat_to_string(c));
    return j;
}

inline Json cfinite_to_json(const CFiniteSeq& c) {
    Json j;
    j["type"] = "cfinite";
    j["field"] = field_to_json(c.field());
    Json coeffs = Json::array(), init = Json::array();
    for (const auto& g : c.coeffs()) coeffs.push_back(nf_to_json(g));
    for (const auto& v : c.initial()) init.push_back(nf_to_json(v));
    j["coeffs"] = coeffs;
    j["initial"] = init;
    return j;
}

inline Json c2finite_to_json(const C2FiniteSeq& a) {
    Json j;
    j["type"] = "c2finite";
    j["field"] = field_to_json(a.field());
    Json coeffs = Json::array();
    for (const auto& c : a.coeffs()) coeffs.push_back(cfinite_to_json(c));
    j["coeffs"] = coeffs;
    Json init = Json::array();
    for (const auto& v : a.initial()) init.push_back(nf_to_json(v));
    j["initial"] = init;
    Json patches = Json::object();
    for (const auto& [n, v] : a.patches()) patches[std::to_string(n)] = nf_to_json(v);
    j["patches"] = patches;
    j["skolem_horizon"] = a.skolem_horizon();
    return j;
}

// ----------------------------------------------------------------- parse ---

inline Rat rat_from_json(const Json& j) {
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    throw domain_error(errc::invalid_input, "expected a rational as \"p/q\" string");
}

inline RatInterval interval_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw domain_error(errc::invalid_input, "interval must be [lo, hi]");
    return RatInterval(rat_from_json(j[0]), rat_from_json(j[1]));
}

inline Box box_from_json(const Json& j) {
    if (!j.contains("re") || !j.contains("im")) throw domain_error(errc::invalid_input, "box needs re and im");
    return Box(interval_from_json(j["re"]), interval_from_json(j["im"]));
}

inline RatPoly poly_from_json(const Json& j) {
    if (!j.is_array()) throw domain_error(errc::invalid_input, "polynomial must be a coefficient array");
    std::vector<Rat> c;
    for (const auto& x : j) c.push_back(rat_from_json(x));
    return RatPoly(std::move(c));
}

// Fields parsed from files are unified against previously seen ones so that
// elements loaded from several files can interoperate when the underlying
// field is literally the same.
class FieldCache {
  public:
    FieldPtr resolve(const Json& j) {
        if (!j.contains("minpoly")) throw domain_error(errc::invalid_input, "field needs a minpoly");
        RatPoly mp = poly_from_json(j["minpoly"]);
        Box box = mp.degree() == 1 ? Box::real_point(-mp.coeff(0))
                                   : box_from_json(j.at("root_box"));
        for (const auto& f : seen_) {
            if (f->minpoly() != mp) continue;
            if (mp.degree() == 1) return f;
            FieldPtr cand = NumberField::create(mp, box);
            if (nfdetail::same_root(mp, cand->root_box(), f->root_box(), cand->real_embedding(), f->real_embedding()))
                return f;
        }
        FieldPtr f = NumberField::create(mp, box);
        seen_.push_back(f);
        return f;
    }

  private:
    std::vector<FieldPtr> seen_;
};

inline NFElement nf_from_json(const Json& j, const FieldPtr& f) {
    std::vector<Rat> coords;
    if (j.is_string() || j.is_number_integer()) {
        coords.push_back(rat_from_json(j));
    } else if (j.is_array()) {
        for (const auto& x : j) coords.push_back(rat_from_json(x));
    } else {
        throw domain_error(errc::invalid_input, "element must be a string or coordinate array");
    }
    if (static_cast<int>(coords.size()) > f->degree())
        throw domain_error(errc::invalid_input, "too many coordinates for the field degree");
    return f->from_coords(std::move(coords));
}

inline CFiniteSeq cfinite_from_json(const Json& j, FieldCache& cache) {
    if (j.value("type", "cfinite") != std::string("cfinite"))
        throw domain_error(errc::invalid_input, "expected a cfinite object");
    FieldPtr f = cache.resolve(j.at("field"));
    std::vector<NFElement> coeffs, init;
    for (const auto& x : j.at("coeffs")) coeffs.push_back(nf_from_json(x, f));
    for (const auto& x : j.at("initial")) init.push_back(nf_from_json(x, f));
    return CFiniteSeq(f, std::move(coeffs), std::move(init));
}

inline C2FiniteSeq c2finite_from_json(const Json& j, FieldCache& cache) {
    if (j.value("type", "") != std::string("c2finite"))
        throw domain_error(errc::invalid_input, "expected a c2finite object");
    FieldPtr f = cache.resolve(j.at("field"));
    std::vector<CFiniteSeq> coeffs;
    for (const auto& x : j.at("coeffs")) coeffs.push_back(cfinite_from_json(x, cache));
    std::vector<NFElement> init;
    for (const auto& x : j.at("initial")) init.push_back(nf_from_json(x, f));
    std::map<long, NFElement> patches;
    if (j.contains("patches"))
        for (const auto& [key, val] : j["patches"].items()) patches[std::stol(key)] = nf_from_json(val, f);
    long horizon = j.value("skolem_horizon", 1000L);
    return C2FiniteSeq(f, std::move(coeffs), std::move(init), std::move(patches), horizon);
}

// Either kind of sequence file, normalized to C^2-finite.
inline C2FiniteSeq sequence_from_json(const Json& j, FieldCache& cache) {
    std::string type = j.value("type", "");
    if (type == "cfinite") return C2FiniteSeq::from_cfinite(cfinite_from_json(j, cache));
    if (type == "c2finite") return c2finite_from_json(j, cache);
    throw domain_error(errc::invalid_input, "file is neither cfinite nor c2finite");
}

inline AlgebraicSpecs algebraic_numbers_from_json(const Json& j) {
    if (j.value("type", "") != std::string("algebraic_numbers"))
        throw domain_error(errc::invalid_input, "expected an algebraic_numbers object");
    AlgebraicSpecs specs;
    for (const auto& num : j.at("numbers")) {
        RatPoly mp = poly_from_json(num.at("minpoly"));
        Box box = mp.degree() == 1 ? Box::real_point(-mp.coeff(0)) : box_from_json(num.at("root_box"));
        specs.minpolys.push_back(mp);
        specs.boxes.push_back(box);
    }
    return specs;
}

inline std::vector<NFElement> terms_from_json(const Json& j, FieldCache& cache) {
    if (j.value("type", "") != std::string("terms"))
        throw domain_error(errc::invalid_input, "expected a terms object");
    FieldPtr f = j.contains("field") ? cache.resolve(j.at("field")) : NumberField::rationals();
    std::vector<NFElement> out;
    for (const auto& x : j.at("values")) out.push_back(nf_from_json(x, f));
    return out;
}

inline Json terms_to_json(const std::vector<NFElement>& terms, const FieldPtr& f) {
    Json j;
    j["type"] = "terms";
    j["field"] = field_to_json(f);
    Json vals = Json::array();
    for (const auto& t : terms) vals.push_back(nf_to_json(t));
    j["values"] = vals;
    return j;
}

inline Json closure_result_to_json(const ClosureResult& r) {
    Json j;
    j["result"] = c2finite_to_json(r.seq);
    j["order"] = r.order;
    j["bound"] = r.bound;
    j["torsion_number"] = static_cast<long>(r.torsion.get_si());
    Json sing = Json::array();
    for (long n : r.singularities) sing.push_back(n);
    j["singularities_found"] = sing;
    j["normalized"] = r.normalized;
    return j;
}

inline Json lattice_result_to_json(const ExpLatticeResult& r, bool with_torsion, const Int& torsion) {
    Json j;
    Json basis = Json::array();
    for (const auto& v : r.basis_L) {
        Json row = Json::array();
        for (const auto& x : v) row.push_back(static_cast<long>(x.get_si()));
        basis.push_back(row);
    }
    j["basis"] = basis;
    Json basis_plus = Json::array();
    for (const auto& v : r.basis_Lplus) {
        Json row = Json::array();
        for (const auto& x : v) row.push_back(static_cast<long>(x.get_si()));
        basis_plus.push_back(row);
    }
    j["basis_Lplus"] = basis_plus;
    if (with_torsion) j["torsion_number"] = static_cast<long>(torsion.get_si());
    j["M_used"] = rat_to_string(r.M_used);
    j["iterations"] = r.iterations;
    if (r.stable.has_value()) j["stable"] = *r.stable;
    return j;
}

inline Json verify_report_to_json(const VerifyReport& rep) {
    Json j;
    j["ok"] = rep.ok;
    if (rep.first_violation)
        j["first_violation"] = *rep.first_violation;
    else
        j["first_violation"] = nullptr;
    Json sing = Json::array();
    for (long n : rep.singular_indices) sing.push_back(n);
    j["singular_indices"] = sing;
    j["order"] = rep.order;
    if (rep.bound)
        j["bound"] = *rep.bound;
    else
        j["bound"] = nullptr;
    j["bound_ok"] = rep.bound_ok;
    return j;
}

inline Json error_to_json(const domain_error& e) {
    Json j;
    Json err;
    err["kind"] = errc_name(e.code());
    err["message"] = e.what();
    if (e.index() >= 0) err["index"] = e.index();
    j["error"] = err;
    return j;
}

}  // namespace recseq
