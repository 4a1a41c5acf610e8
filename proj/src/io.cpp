#include "amitsur/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "amitsur/classify.hpp"
#include "amitsur/dual_algebra.hpp"
#include "amitsur/errors.hpp"

namespace amitsur::io {

JobError::JobError(std::string pointer, const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(message), pointer_(std::move(pointer)), line_(line), column_(column) {}

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {"units",        "h2",          "cocycle-check", "normalize",
                                                   "twist",        "classify",    "dual-algebra",  "gamma-verify",
                                                   "azumaya-check", "compare"};
    return names;
}

int exit_code_of(const std::exception& e) {
    if (dynamic_cast<const RingTooLarge*>(&e) || dynamic_cast<const std::bad_alloc*>(&e)) return kCapExceeded;
    if (dynamic_cast<const JobError*>(&e) || dynamic_cast<const std::invalid_argument*>(&e)) return kInputError;
    return kCheckFailed;
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

namespace {

// ---------------------------------------------------------------- locating

// Walks already-validated JSON text to the value a pointer names.
class Locator {
public:
    explicit Locator(std::string_view s) : s_(s) {}

    std::optional<std::size_t> find(const std::vector<std::string>& tokens) {
        pos_ = 0;
        ws();
        return descend(tokens, 0) ? std::optional<std::size_t>(pos_) : std::nullopt;
    }

private:
    bool descend(const std::vector<std::string>& tokens, std::size_t depth) {
        if (depth == tokens.size()) return true;
        if (peek() == '{') {
            ++pos_;
            ws();
            if (peek() == '}') return false;
            while (pos_ < s_.size()) {
                std::string key = string();
                ws();
                ++pos_;  // ':'
                ws();
                if (key == tokens[depth]) return descend(tokens, depth + 1);
                skip_value();
                ws();
                if (peek() != ',') return false;
                ++pos_;
                ws();
            }
            return false;
        }
        if (peek() == '[') {
            std::size_t want = 0;
            try {
                want = std::stoul(tokens[depth]);
            } catch (...) {
                return false;
            }
            ++pos_;
            ws();
            for (std::size_t i = 0; pos_ < s_.size() && peek() != ']'; ++i) {
                if (i == want) return descend(tokens, depth + 1);
                skip_value();
                ws();
                if (peek() != ',') return false;
                ++pos_;
                ws();
            }
        }
        return false;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\n' || s_[pos_] == '\r' || s_[pos_] == '\t')) ++pos_;
    }
    std::string string() {
        std::string out;
        ++pos_;
        while (pos_ < s_.size() && s_[pos_] != '"') {
            if (s_[pos_] == '\\') ++pos_;
            if (pos_ < s_.size()) out += s_[pos_++];
        }
        ++pos_;
        return out;
    }
    void skip_value() {
        const char c = peek();
        if (c == '"') {
            string();
        } else if (c == '{' || c == '[') {
            int depth = 0;
            do {
                const char d = peek();
                if (d == '"') {
                    string();
                    continue;
                }
                if (d == '{' || d == '[') ++depth;
                if (d == '}' || d == ']') --depth;
                ++pos_;
            } while (depth > 0 && pos_ < s_.size());
        } else {
            while (pos_ < s_.size() && std::string_view(",]} \n\r\t").find(s_[pos_]) == std::string_view::npos) ++pos_;
        }
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

std::vector<std::string> pointer_tokens(const std::string& pointer) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < pointer.size()) {
        const std::size_t next = pointer.find('/', i + 1);
        std::string tok = pointer.substr(i + 1, next == std::string::npos ? std::string::npos : next - i - 1);
        std::string un;
        for (std::size_t k = 0; k < tok.size(); ++k) {
            if (tok[k] == '~' && k + 1 < tok.size()) {
                un += tok[k + 1] == '1' ? '/' : '~';
                ++k;
            } else {
                un += tok[k];
            }
        }
        out.push_back(un);
        if (next == std::string::npos) break;
        i = next;
    }
    return out;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

// ---------------------------------------------------------------- schema

std::string describe(const std::string& pointer) { return pointer.empty() ? "the document root" : pointer; }

void require_object(const Json& j, const std::string& p) {
    if (!j.is_object()) throw JobError(p, describe(p) + " must be an object");
}

void allow_keys(const Json& j, const std::string& p, std::initializer_list<const char*> keys) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; })) {
            std::string list;
            for (const char* k : keys) list += std::string(list.empty() ? "" : ", ") + k;
            throw JobError(p + "/" + it.key(), "unknown field \"" + it.key() + "\" (allowed: " + list + ")");
        }
    }
}

const Json& field(const Json& j, const std::string& p, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw JobError(p, describe(p) + " is missing required field \"" + key + "\"");
    return *it;
}

std::int64_t integer(const Json& j, const std::string& p) {
    if (!j.is_number_integer()) throw JobError(p, describe(p) + " must be an integer");
    return j.get<std::int64_t>();
}

std::vector<std::int64_t> integers(const Json& j, const std::string& p) {
    if (!j.is_array()) throw JobError(p, describe(p) + " must be an array of integers");
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(integer(j[i], p + "/" + std::to_string(i)));
    return out;
}

// Coefficients reduced into [0, n); the length must match `expected`.
Vec coefficients(const Json& j, const std::string& p, std::size_t expected, const Zn& zn, const std::string& what) {
    auto v = integers(j, p);
    if (v.size() != expected)
        throw JobError(p, "rank mismatch: " + what + " needs " + std::to_string(expected) + " coefficients, got " +
                              std::to_string(v.size()));
    Vec out;
    for (auto x : v) out.push_back(zn.reduce(x));
    return out;
}

// Rings with identical definitions within one job share one object, so that
// extensions declared separately over the same base are comparable.
struct RingCache {
    std::map<std::string, RingPtr> rings;
};

RingPtr parse_ring_cached(const Json& j, const std::string& p, RingCache* cache) {
    require_object(j, p);
    const std::string key = j.dump();
    if (cache)
        if (auto it = cache->rings.find(key); it != cache->rings.end()) return it->second;
    const std::int64_t n = integer(field(j, p, "modulus"), p + "/modulus");
    if (n < 2 || n > (std::int64_t(1) << 31)) throw JobError(p + "/modulus", "modulus must lie in [2, 2^31]");
    const Json& kind = field(j, p, "kind");
    if (!kind.is_string()) throw JobError(p + "/kind", "kind must be \"quotient\" or \"product\"");
    RingPtr ring;
    if (kind == "quotient") {
        allow_keys(j, p, {"modulus", "kind", "poly"});
        auto poly = integers(field(j, p, "poly"), p + "/poly");
        try {
            ring = make_quotient_ring(std::uint64_t(n), poly);
        } catch (const std::invalid_argument& e) {
            throw JobError(p + "/poly", e.what());
        }
        if (ring->rank() == 1) ring = integers_mod(std::uint64_t(n));
    } else if (kind == "product") {
        allow_keys(j, p, {"modulus", "kind", "factors"});
        const Json& factors = field(j, p, "factors");
        if (!factors.is_array() || factors.empty())
            throw JobError(p + "/factors", "factors must be a non-empty array of rings");
        for (std::size_t i = 0; i < factors.size(); ++i) {
            const std::string fp = p + "/factors/" + std::to_string(i);
            RingPtr f = parse_ring_cached(factors[i], fp, cache);
            if (f->modulus() != std::uint64_t(n))
                throw JobError(fp + "/modulus", "factor modulus " + std::to_string(f->modulus()) +
                                                    " differs from the product modulus " + std::to_string(n));
            ring = ring ? make_product_ring(ring, f) : f;
        }
    } else {
        throw JobError(p + "/kind", "unknown ring kind \"" + kind.get<std::string>() + "\" (allowed: quotient, product)");
    }
    if (cache) cache->rings.emplace(key, ring);
    return ring;
}

ExtPtr parse_extension_cached(const Json& j, const std::string& p, RingCache* cache) {
    require_object(j, p);
    allow_keys(j, p, {"name", "base", "top", "eta", "basis"});
    RingPtr base = parse_ring_cached(field(j, p, "base"), p + "/base", cache);
    RingPtr top = parse_ring_cached(field(j, p, "top"), p + "/top", cache);
    if (base->modulus() != top->modulus())
        throw JobError(p + "/top/modulus", "top modulus must equal the base modulus " + std::to_string(base->modulus()));
    const Json& eta = field(j, p, "eta");
    if (!eta.is_array() || eta.size() != base->rank())
        throw JobError(p + "/eta", "eta must list " + std::to_string(base->rank()) +
                                       " images, one per base basis element");
    Matrix images(top->rank(), base->rank());
    for (std::size_t i = 0; i < eta.size(); ++i)
        images.set_column(i, coefficients(eta[i], p + "/eta/" + std::to_string(i), top->rank(), top->zn(),
                                          "an image in the top ring"));
    const Json& basis = field(j, p, "basis");
    if (!basis.is_array() || basis.empty()) throw JobError(p + "/basis", "basis must be a non-empty array");
    std::vector<RingElement> b;
    for (std::size_t i = 0; i < basis.size(); ++i)
        b.emplace_back(top, coefficients(basis[i], p + "/basis/" + std::to_string(i), top->rank(), top->zn(),
                                         "a basis element"));
    std::string name;
    if (auto it = j.find("name"); it != j.end()) {
        if (!it->is_string()) throw JobError(p + "/name", "name must be a string");
        name = it->get<std::string>();
    }
    try {
        return Extension::make(base, top, RingHom(base, top, images), std::move(b), name);
    } catch (const std::invalid_argument& e) {
        throw JobError(p, e.what());
    }
}

std::size_t twist_length(const Extension& ext) {
    const std::size_t d = ext.degree();
    return ext.base_rank() * d * d * d;
}

std::optional<Vec> parse_twist(const Json& obj, const std::string& p, const Extension& ext) {
    auto it = obj.find("twist");
    if (it == obj.end()) return std::nullopt;
    return coefficients(*it, p + "/twist", twist_length(ext), ext.base()->zn(), "a twist in S^(x)3");
}

bool is_command(const std::string& name) {
    const auto& names = command_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

JobSpec parse_document(const Json& doc, const Limits& limits) {
    require_object(doc, "");
    allow_keys(doc, "", {"extension", "command"});
    RingCache cache;
    JobSpec spec;
    spec.limits = limits;
    spec.ext = parse_extension_cached(field(doc, "", "extension"), "/extension", &cache);
    const Json& cmd = field(doc, "", "command");
    require_object(cmd, "/command");
    const Json& name = field(cmd, "/command", "name");
    std::string valid;
    for (const auto& n : command_names()) valid += (valid.empty() ? "" : ", ") + n;
    if (!name.is_string() || !is_command(name.get<std::string>()))
        throw JobError("/command/name",
                       "unknown command " + (name.is_string() ? "\"" + name.get<std::string>() + "\"" : name.dump()) +
                           " (valid commands: " + valid + ")");
    spec.command = name.get<std::string>();
    spec.params = cmd;
    const std::string& c = spec.command;
    if (c == "units") {
        allow_keys(cmd, "/command", {"name", "level"});
        if (auto it = cmd.find("level"); it != cmd.end()) {
            const auto level = integer(*it, "/command/level");
            if (level < 1 || level > 4) throw JobError("/command/level", "level must lie in [1, 4]");
        }
    } else if (c == "h2") {
        allow_keys(cmd, "/command", {"name"});
    } else if (c == "classify") {
        allow_keys(cmd, "/command", {"name", "units_only"});
        if (auto it = cmd.find("units_only"); it != cmd.end() && !it->is_boolean())
            throw JobError("/command/units_only", "units_only must be true or false");
    } else if (c == "azumaya-check") {
        allow_keys(cmd, "/command", {"name", "twist", "algebra"});
        if (auto it = cmd.find("algebra"); it != cmd.end()) {
            if (*it != "twisted" && *it != "top")
                throw JobError("/command/algebra", "algebra must be \"twisted\" or \"top\"");
            if (*it == "top" && cmd.contains("twist"))
                throw JobError("/command/twist", "the top algebra takes no twist");
        }
        spec.twist = parse_twist(cmd, "/command", *spec.ext);
    } else if (c == "compare") {
        allow_keys(cmd, "/command", {"name", "twist", "other"});
        spec.twist = parse_twist(cmd, "/command", *spec.ext);
        const Json& other = field(cmd, "/command", "other");
        require_object(other, "/command/other");
        allow_keys(other, "/command/other", {"extension", "twist"});
        TwistRef ref;
        ref.ext = other.contains("extension")
                      ? parse_extension_cached(other["extension"], "/command/other/extension", &cache)
                      : spec.ext;
        if (ref.ext->base() != spec.ext->base())
            throw JobError("/command/other/extension/base", "both extensions must share the base ring");
        ref.coeffs = parse_twist(other, "/command/other", *ref.ext);
        spec.other = ref;
    } else {
        allow_keys(cmd, "/command", {"name", "twist"});
        spec.twist = parse_twist(cmd, "/command", *spec.ext);
    }
    return spec;
}

// ---------------------------------------------------------------- reports

Json element(const RingElement& x) {
    Json a = Json::array();
    for (Coeff c : x.coeffs()) a.push_back(c);
    return a;
}

Json vector_json(const Vec& v) {
    Json a = Json::array();
    for (Coeff c : v) a.push_back(c);
    return a;
}

Json elements(const std::vector<RingElement>& xs) {
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(element(x));
    return a;
}

Json optional_element(const std::optional<RingElement>& x) { return x ? element(*x) : Json(nullptr); }

Json extension_summary(const Extension& ext) {
    Json j;
    j["name"] = ext.name();
    j["base_modulus"] = ext.base()->modulus();
    j["base_rank"] = ext.base_rank();
    j["degree"] = ext.degree();
    j["twist_length"] = twist_length(ext);
    return j;
}

RingElement twist_of(const ComplexPtr& c, const std::optional<Vec>& coeffs) {
    return coeffs ? RingElement(c->ring(3), *coeffs) : c->one(3);
}

Json table(const RAlgebra& a) {
    Json rows = Json::array();
    for (std::size_t p = 0; p < a.rank(); ++p)
        for (std::size_t q = 0; q < a.rank(); ++q) {
            Json r;
            r["p"] = p;
            r["q"] = q;
            r["product"] = vector_json(a.product(p, q));
            rows.push_back(r);
        }
    return rows;
}

Json algebra_json(const RAlgebra& a, bool& ok) {
    Json j;
    j["rank"] = a.rank();
    j["one"] = vector_json(a.one());
    j["associative"] = a.is_associative();
    j["unital"] = a.is_unit_element(a.one());
    j["table"] = table(a);
    ok = ok && j["associative"].get<bool>() && j["unital"].get<bool>();
    return j;
}

Json flags(const TwistElement& t) {
    Json j;
    j["unit"] = t.is_unit();
    j["cocycle"] = t.is_cocycle();
    j["cosickle"] = t.is_cosickle();
    j["almost_invertible"] = t.is_almost_invertible();
    return j;
}

using Runner = std::function<bool(const JobSpec&, const ComplexPtr&, Json&)>;

bool run_units(const JobSpec& spec, const ComplexPtr& c, Json& out) {
    const int level = int(spec.params.value("level", 2));
    auto units = enumerate_units(c->ring(level), c->limits());
    out["level"] = level;
    out["rank"] = c->ring(level)->rank();
    out["count"] = units.size();
    out["units"] = elements(units);
    return true;
}

bool run_h2(const JobSpec&, const ComplexPtr& c, Json& out) {
    Json units;
    for (int n = 1; n <= 3; ++n) units["S^" + std::to_string(n)] = enumerate_units(c->ring(n), c->limits()).size();
    auto h = compute_h2(*c);
    out["unit_counts"] = units;
    out["Z2"] = {{"count", h.cocycles.size()}, {"elements", elements(h.cocycles)}};
    out["B2"] = {{"count", h.coboundaries.size()}, {"elements", elements(h.coboundaries)}};
    out["H2"] = {{"order", h.order}, {"trivial", h.order == 1}, {"representatives", elements(h.representatives)}};
    return true;
}

bool run_cocycle_check(const JobSpec& spec, const ComplexPtr& c, Json& out) {
    TwistElement t(c, twist_of(c, spec.twist));
    out["twist"] = element(t.u());
    out["flags"] = flags(t);
    out["degenerate"] = t.is_cosickle() && (t.face(1) * t.face(3)).is_zero();
    out["inverse"] = optional_element(t.inverse());
    out["norm"] = element(t.norm());
    if (t.is_cocycle()) {
        out["norm_identities"] = check_norm_identities(t);
        auto bc = self_base_change(*c);
        auto w = check_base_change_witness(*bc, t);
        out["base_change_witness"] = {{"witness", element(w.witness)},
                                      {"coboundary_matches", w.coboundary_matches},
                                      {"direct_identity", w.direct_identity}};
        return out["norm_identities"].get<bool>() && w.verified();
    }
    out["norm_identities"] = nullptr;
    out["base_change_witness"] = nullptr;
    return false;
}

bool run_normalize(const JobSpec& spec, const ComplexPtr& c, Json& out) {
    TwistElement t(c, twist_of(c, spec.twist));
    auto n = normalize(t);
    const RingElement& v = n.twist.u();
    auto back = cohomologous(*c, v, t.u());
    const bool norm_one = n.twist.norm().is_one();
    const bool product = v == t.u() * coboundary(*c, n.witness);
    const bool witness_ok = back && v == t.u() * coboundary(*c, *back);
    out["twist"] = element(t.u());
    out["norm"] = element(t.norm());
    out["witness"] = element(n.witness);
    out["normalized"] = element(v);
    out["normalized_norm"] = element(n.twist.norm());
    out["checks"] = {{"normalized_is_cocycle", n.twist.is_cocycle()},
                     {"norm_is_one", norm_one},
                     {"equals_twist_times_coboundary", product},
                     {"cohomologous_witness", optional_element(back)},
                     {"witness_verified", witness_ok}};
    return n.twist.is_cocycle() && norm_one && product && witness_ok;
}

bool run_twist(const JobSpec& spec, const ComplexPtr& c, Json& out) {
    auto C = twisted_coring(c, twist_of(c, spec.twist));
    const bool direct = coassociative_direct(C), identity = coassociative_identity(C);
    const auto counit = check_counit(C);
    const bool azumaya = is_azumaya(C);
    out["twist"] = element(C.twist().u());
    out["flags"] = flags(C.twist());
    out["coassociative"] = {{"direct", direct}, {"identity", identity}, {"agree", direct == identity}};
    out["counit"] = {{"attached", C.has_counit()},
                     {"scale", optional_element(C.counit_scale())},
                     {"laws_hold", counit.ok},
                     {"reason", counit.reason},
                     {"search", optional_element(find_counit(C))}};
    out["azumaya"] = azumaya;
    out["recovered_twist_matches"] = recover_twist(C).u() == C.twist().u();
    out["iso_to_canonical"] = azumaya ? optional_element(iso_test(C, canonical_coring(c))) : Json(nullptr);
    return direct == identity && direct && counit.ok;
}

bool run_classify(const JobSpec& spec, const ComplexPtr& c, Json& out) {
    const bool units_only = spec.params.value("units_only", false);
    auto cc = classify_all(c, units_only);
    std::size_t coassoc = 0, counit = 0, azumaya = 0;
    Json census = Json::array();
    for (const auto& e : cc.entries) {
        coassoc += e.coassociative;
        counit += e.counit_admitting;
        azumaya += e.azumaya;
        Json row;
        row["element"] = element(e.u);
        row["unit?"] = e.unit;
        row["cocycle?"] = e.cocycle;
        row["cosickle?"] = e.cosickle;
        row["almost-inv?"] = e.almost_invertible;
        row["degenerate"] = e.degenerate;
        row["coassociative"] = e.coassociative;
        row["counit"] = e.counit_admitting;
        row["azumaya"] = e.azumaya;
        census.push_back(row);
    }
    auto q = monoid_quotient(c, MonoidKind::full, units_only);
    Json orbits = Json::array();
    for (const auto& o : q.orbits)
        orbits.push_back({{"representative", element(o.representative)},
                          {"size", o.members.size()},
                          {"invertible", o.invertible}});
    out["units_only"] = units_only;
    out["swept"] = cc.entries.size();
    out["counts"] = {{"units", cc.units},
                     {"unit_cocycles", cc.cocycles},
                     {"cosickles", cc.cosickles},
                     {"almost_invertible", cc.almost_invertible},
                     {"degenerate", cc.degenerate},
                     {"coassociative", coassoc},
                     {"counit_admitting", counit},
                     {"azumaya", azumaya}};
    out["discrepancies"] = {{"implication_chain", cc.chain_violations},
                            {"coassociative_vs_cosickle", cc.coassociative_mismatches},
                            {"counit_vs_almost_invertible", cc.counit_mismatches},
                            {"azumaya_vs_unit_cocycle", cc.azumaya_mismatches},
                            {"total", cc.discrepancies()}};
    out["census"] = census;
    out["cosickle_classes"] = {{"coboundaries", elements(q.coboundaries)}, {"orbits", orbits}};
    return cc.discrepancies() == 0;
}

bool run_dual_algebra(const JobSpec& spec, const ComplexPtr& c, Json& out) {
    auto C = twisted_coring(c, twist_of(c, spec.twist));
    bool ok = true;
    out["twist"] = element(C.twist().u());
    out["right"] = algebra_json(right_dual_algebra(C), ok);
    out["left"] = algebra_json(left_dual_algebra(C), ok);
    auto D = descent_algebra(C);
    Json d = algebra_json(D.algebra, ok);
    d["rank_ok"] = D.rank_ok;
    d["closed"] = D.closed;
    out["descent"] = d;
    return ok && D.rank_ok && D.closed;
}

bool run_gamma_verify(const JobSpec& spec, const ComplexPtr& c, Json& out) {
    auto C = twisted_coring(c, twist_of(c, spec.twist));
    auto g = verify_gamma(C);
    out["twist"] = element(C.twist().u());
    out["identity_embedding"] = gamma_matrix(C) == unit_embedding_matrix(*c->ext());
    out["descent_rank"] = g.descent_rank;
    out["checks"] = {{"rank_ok", g.rank_ok},
                     {"closed", g.closed},
                     {"image_in_descent", g.image_in_descent},
                     {"multiplicative", g.multiplicative},
                     {"unital", g.unital},
                     {"bijective", g.bijective},
                     {"left_inverse", g.left_inverse},
                     {"right_inverse", g.right_inverse}};
    out["verified"] = g.ok();
    return g.ok();
}

bool run_azumaya_check(const JobSpec& spec, const ComplexPtr& c, Json& out) {
    if (spec.params.value("algebra", std::string("twisted")) == "top") {
        auto a = algebra_of(*c->ext());
        out["algebra"] = "top";
        out["rank"] = a.rank();
        out["enveloping_size"] = enveloping_size(a);
        out["enveloping_bijective"] = is_azumaya_algebra(a);
        return out["enveloping_bijective"].get<bool>();
    }
    auto C = twisted_coring(c, twist_of(c, spec.twist));
    out["algebra"] = "twisted";
    out["twist"] = element(C.twist().u());
    out["coring_azumaya"] = is_azumaya(C);
    if (!C.twist().is_cocycle()) {
        out["rank"] = nullptr;
        out["enveloping_size"] = nullptr;
        out["enveloping_bijective"] = nullptr;
        out["split_certificate"] = nullptr;
        return false;
    }
    auto a = right_dual_algebra(C);
    auto split = split_certificate(C);
    out["rank"] = a.rank();
    out["enveloping_size"] = enveloping_size(a);
    out["enveloping_bijective"] = is_azumaya_algebra(a);
    out["split_certificate"] = {{"witness_verified", split.witness_verified},
                                {"untwist_multiplicative", split.untwist.multiplicative},
                                {"untwist_unital", split.untwist.unital},
                                {"untwist_bijective", split.untwist.bijective}};
    return out["coring_azumaya"].get<bool>() && out["enveloping_bijective"].get<bool>() && split.ok();
}

bool run_compare(const JobSpec& spec, const ComplexPtr& c, Json& out) {
    auto C = twisted_coring(c, twist_of(c, spec.twist));
    const bool same = spec.other->ext == spec.ext;
    ComplexPtr oc = same ? c : make_complex(spec.other->ext, spec.limits);
    auto D = twisted_coring(oc, twist_of(oc, spec.other->coeffs));
    auto r = compare_via_refinement(C, D);
    out["twist"] = element(C.twist().u());
    out["other"] = {{"extension", extension_summary(*oc->ext())}, {"twist", element(D.twist().u())}};
    out["same_extension"] = same;
    out["equivalent"] = r.equivalent;
    out["refinement"] = extension_summary(*r.refinement->ext());
    out["witness"] = optional_element(r.witness);
    if (same) {
        BrauerClasses classes(c);
        out["classes"] = elements({classes.of(C).representative, classes.of(D).representative});
    } else {
        out["classes"] = Json::array();
    }
    return true;
}

const std::map<std::string, Runner>& runners() {
    static const std::map<std::string, Runner> r = {
        {"units", run_units},
        {"h2", run_h2},
        {"cocycle-check", run_cocycle_check},
        {"normalize", run_normalize},
        {"twist", run_twist},
        {"classify", run_classify},
        {"dual-algebra", run_dual_algebra},
        {"gamma-verify", run_gamma_verify},
        {"azumaya-check", run_azumaya_check},
        {"compare", run_compare},
    };
    return r;
}

// ---------------------------------------------------------------- text

std::string inline_text(const Json& v) {
    if (v.is_null()) return "-";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + inline_text(v[i]);
        return s + "]";
    }
    if (v.is_object()) {
        std::string s = "{";
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            s += (first ? "" : ", ") + it.key() + "=" + inline_text(it.value());
            first = false;
        }
        return s + "}";
    }
    return v.dump();
}

bool all_of_kind(const Json& a, bool (Json::*pred)() const noexcept) {
    return std::all_of(a.begin(), a.end(), [&](const Json& x) { return (x.*pred)(); });
}

void render_table(std::ostream& os, const Json& rows, const std::string& pad) {
    std::vector<std::string> keys;
    for (auto it = rows[0].begin(); it != rows[0].end(); ++it) keys.push_back(it.key());
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width;
    for (const auto& k : keys) width.push_back(k.size());
    for (const auto& r : rows) {
        std::vector<std::string> line;
        for (std::size_t i = 0; i < keys.size(); ++i) {
            line.push_back(r.contains(keys[i]) ? inline_text(r[keys[i]]) : "-");
            width[i] = std::max(width[i], line.back().size());
        }
        cells.push_back(std::move(line));
    }
    auto emit = [&](const std::vector<std::string>& line) {
        std::string s = pad;
        for (std::size_t i = 0; i < line.size(); ++i) {
            s += line[i];
            if (i + 1 < line.size()) s += std::string(width[i] - line[i].size() + 2, ' ');
        }
        os << s << '\n';
    };
    emit(keys);
    for (const auto& line : cells) emit(line);
}

void render(std::ostream& os, const Json& obj, std::size_t indent) {
    const std::string pad(indent, ' ');
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const Json& v = it.value();
        if (v.is_object()) {
            os << pad << it.key() << ":\n";
            render(os, v, indent + 2);
        } else if (v.is_array() && !v.empty() && all_of_kind(v, &Json::is_object)) {
            os << pad << it.key() << ":\n";
            render_table(os, v, pad + "  ");
        } else if (v.is_array() && !v.empty() && all_of_kind(v, &Json::is_array)) {
            os << pad << it.key() << ":\n";
            for (const auto& x : v) os << pad << "  " << inline_text(x) << '\n';
        } else {
            const std::string t = inline_text(v);
            os << pad << it.key() << ':' << (t.empty() ? "" : " ") << t << '\n';
        }
    }
}

// Indented JSON with arrays of scalars kept on one line.
void write_json(std::ostream& os, const Json& v, std::size_t indent) {
    const std::string pad(indent, ' '), inner(indent + 2, ' ');
    if (v.is_object() && !v.empty()) {
        os << "{\n";
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            os << (first ? "" : ",\n") << inner << Json(it.key()).dump() << ": ";
            write_json(os, it.value(), indent + 2);
            first = false;
        }
        os << '\n' << pad << '}';
    } else if (v.is_array() && !v.empty() && !all_of_kind(v, &Json::is_primitive)) {
        os << "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            os << (i ? ",\n" : "") << inner;
            write_json(os, v[i], indent + 2);
        }
        os << '\n' << pad << ']';
    } else {
        os << v.dump();
    }
}

}  // namespace

RingPtr parse_ring(const Json& j, const std::string& pointer) { return parse_ring_cached(j, pointer, nullptr); }

ExtPtr parse_extension(const Json& j, const std::string& pointer) {
    RingCache cache;
    return parse_extension_cached(j, pointer, &cache);
}

JobSpec parse_job(std::string_view text, const Limits& limits) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw JobError("", std::string("syntax error: ") + e.what(), line, column);
    }
    try {
        JobSpec spec = parse_document(doc, limits);
        spec.digest = sha256_hex(text);
        return spec;
    } catch (const JobError& e) {
        Locator loc(text);
        auto tokens = pointer_tokens(e.pointer());
        // The deepest prefix of the pointer that exists in the text.
        std::optional<std::size_t> at;
        while (!(at = loc.find(tokens)) && !tokens.empty()) tokens.pop_back();
        auto [line, column] = line_column(text, at.value_or(0));
        throw JobError(e.pointer(), e.what(), line, column);
    }
}

JobSpec parse_job_file(const std::filesystem::path& path, const Limits& limits) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw JobError("", "cannot read definition file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_job(ss.str(), limits);
}

Report run_job(const JobSpec& spec) {
    auto c = make_complex(spec.ext, spec.limits);
    Json result = Json::object();
    const bool ok = runners().at(spec.command)(spec, c, result);
    Report r;
    r.body["tool"] = kToolName;
    r.body["version"] = kToolVersion;
    r.body["definition_sha256"] = spec.digest;
    r.body["command"] = spec.command;
    r.body["parameters"] = spec.params;
    r.body["cosickle_condition"] = kCosickleCondition;
    r.body["extension"] = extension_summary(*spec.ext);
    r.body["result"] = result;
    r.body["status"] = ok ? "ok" : "fail";
    r.exit_code = ok ? kOk : kCheckFailed;
    return r;
}

std::string emit_report(const Report& report, Format format) {
    std::ostringstream os;
    if (format == Format::json) {
        write_json(os, report.body, 0);
        os << '\n';
    } else {
        render(os, report.body, 0);
    }
    return os.str();
}

}  // namespace amitsur::io
