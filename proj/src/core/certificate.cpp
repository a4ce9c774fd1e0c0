#include "certificate.hpp"

namespace midsub {

Json Certificate::to_json(const Config& cfg) const {
    Json j = Json::object();
    j.set("schema", 1);
    j.set("word", word);
    if (valence > 0) j.set("valence", valence);
    if (!orientation.empty()) j.set("orientation", orientation);
    j.set("verdict", verdict);
    Json ev = Json::array();
    for (const auto& e : evidence) {
        Json item = Json::object();
        item.set("name", e.name).set("value", e.value);
        if (!e.note.empty()) item.set("note", e.note);
        ev.push(std::move(item));
    }
    j.set("evidence", std::move(ev));
    Json prov = Json::array();
    for (const auto& p : provenance) prov.push(p);
    j.set("provenance", std::move(prov));
    if (!note.empty()) j.set("note", note);
    j.set("tool", cfg.tool_version);
    j.set("config", cfg.echo());
    return j;
}

} // namespace midsub
