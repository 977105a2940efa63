#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "gallai_lab/copies.hpp"
#include "gallai_lab/gallai.hpp"
#include "gallai_lab/graph.hpp"
#include "gallai_lab/hardness.hpp"

namespace gallai_lab::io {

using Json = nlohmann::ordered_json;

/// Parses JSON text; failures raise ParseError as "source:line:column: message".
Json parse(std::string_view text, std::string_view source = "<input>");
/// Compact serialization followed by a newline.
std::string dump(const Json& j);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);
Json read_json(const std::filesystem::path& path);

/// {"n","k","colors"} with colors in upper-triangle row-major order.
Json to_json(const ColoredGraph& g);
ColoredGraph colored_graph_from_json(const Json& j);
/// {"n","edges":[[u,v],...]} in insertion order.
Json to_json(const Digraph& d);
Digraph digraph_from_json(const Json& j);

/// Leaves {"vertex":v}; nodes {"pair":[a,b],"children":[...],"cross":[[i,j,c],...]}.
Json to_json(const GallaiTree& t);
GallaiTree tree_from_json(const Json& j);
std::string to_dot(const GallaiTree& t);

Json to_json(const VertexPartition& p);

/// One {"u","v","old","new"} object per line.
std::string to_jsonl(const EditTranscript& t);
EditTranscript transcript_from_jsonl(std::string_view text, std::string_view source = "<input>");

/// {"pattern_size","role_map","copies"}.
Json to_json(const CopyFamily& f);
CopyFamily family_from_json(const Json& j);

Json to_json(const HardnessClaims& c);

// ---------------------------------------------------------------------------
// Hardness bundles: host.json, blowup.json, family.json, claims.json.

void write_bundle(const HardnessInstance& inst, const std::filesystem::path& dir);

struct BundleVerdict {
    bool ok = true;
    std::vector<std::string> failures;
    Json details = Json::object();
};

/// Re-derives every claim from the four files alone.
BundleVerdict verify_bundle(const std::filesystem::path& dir, std::uint64_t budget = 0);

}  // namespace gallai_lab::io
