#ifndef MODELTH_JSON_IO_HPP
#define MODELTH_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "modelth/code.hpp"
#include "modelth/modelcomp.hpp"
#include "modelth/structure.hpp"

namespace modelth {

using Json = nlohmann::ordered_json;

Json signature_to_json(const Signature& sig);
Signature signature_from_json(const Json& j);

Json structure_to_json(const FinStructure& m);
FinStructure structure_from_json(const Json& j, const Signature& sig);

Json code_to_json(const PointedCode& c);
PointedCode code_from_json(const Json& j);

Json class_to_json(const BoundedClass& c);
BoundedClass class_from_json(const Json& j);

Json ec_report_to_json(const EcReport& r);

Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace modelth

#endif
