#include "simclass/json_io.hpp"

#include "simclass/error.hpp"

namespace simclass {

Json rows_json(const Mat& a)
{
    Json rows = Json::array();
    for (const auto& r : a.rows()) rows.push_back(r);
    return rows;
}

Json mat_json(const Mat& a)
{
    Json j;
    j["ring"] = a.ctx().descriptor();
    j["n"] = a.n();
    j["entries"] = rows_json(a);
    return j;
}

Mat mat_from_json(const Json& j, const std::optional<RingCtx>& ring)
{
    try {
        if (j.is_array()) {
            if (!ring) fail(Errc::Parse, "a bare matrix needs a ring descriptor");
            return Mat::from_rows(*ring, j.get<std::vector<std::vector<std::uint64_t>>>());
        }
        if (!j.is_object() || !j.contains("entries")) fail(Errc::Parse, "matrix JSON needs an 'entries' field");
        std::optional<RingCtx> ctx = ring;
        if (j.contains("ring")) {
            RingCtx parsed = RingCtx::parse(j.at("ring").get<std::string>());
            if (ring && !(*ring == parsed)) fail(Errc::CtxMismatch, "matrix ring differs from the requested ring");
            ctx = parsed;
        }
        if (!ctx) fail(Errc::Parse, "matrix JSON has no ring");
        Mat m = Mat::from_rows(*ctx, j.at("entries").get<std::vector<std::vector<std::uint64_t>>>());
        if (j.contains("n") && j.at("n").get<int>() != m.n()) fail(Errc::Parse, "matrix size disagrees with 'n'");
        return m;
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::Parse, std::string("malformed matrix JSON: ") + e.what());
    }
}

Mat mat_from_text(const std::string& text, const std::optional<RingCtx>& ring)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::Parse, std::string("invalid JSON: ") + e.what());
    }
    return mat_from_json(j, ring);
}

Json form_json(const CanonicalForm2& f)
{
    Json j;
    j["j"] = f.j;
    j["d"] = f.d.value.repr();
    if (f.c) j["c"] = f.c->repr();
    if (f.e) j["e"] = f.e->repr();
    return j;
}

Json form_json(const HardForm& f)
{
    Json j;
    j["kind"] = "hard";
    j["type"] = hard_tag_name(f.tag);
    j["depth"] = f.depth;
    if (f.tag == HardTag::TypeIII0) j["t_a"] = f.depth;
    j["m"] = f.params.m;
    j["a"] = f.params.a.repr();
    j["b"] = f.params.b.repr();
    j["c"] = f.params.c.repr();
    j["d"] = f.params.d.repr();
    return j;
}

Json form_json(const CanonicalForm3& f)
{
    Json j;
    j["j"] = f.j;
    j["d"] = f.d.value.repr();
    j["body"] = std::visit(
        [](const auto& b) -> Json {
            using T = std::decay_t<decltype(b)>;
            Json o;
            if constexpr (std::is_same_v<T, ScalarBody>) {
                o["kind"] = "scalar";
            } else if constexpr (std::is_same_v<T, CyclicBody>) {
                o["kind"] = "cyclic";
                o["coeffs"] = {b.coeffs[0].repr(), b.coeffs[1].repr(), b.coeffs[2].repr()};
            } else if constexpr (std::is_same_v<T, SplitBody>) {
                o["kind"] = "split";
                o["a"] = b.a.repr();
                o["inner"] = form_json(b.inner);
            } else {
                o = form_json(b.form);
            }
            return o;
        },
        f.body);
    return j;
}

Json count_vector_json(const CountVector& v)
{
    Json j = Json::array();
    for (const auto& x : v.eta) j.push_back(x.str());
    return j;
}

} // namespace simclass
