#include "hpack/json_io.hpp"

#include <fstream>

namespace hpack {

Json instance_to_json(const Instance& instance) {
  Json blocks = Json::object();
  for (const auto& [id, block] : instance.blocks) {
    Json rects = Json::array();
    for (const auto& r : block.rects) {
      Json variants = Json::array();
      for (const auto& v : r.variants) variants.push_back(Json::array({v.w, v.h}));
      rects.push_back(Json{{"id", r.id}, {"variants", variants}});
    }
    Json occs = Json::array();
    for (const auto& o : block.occs) occs.push_back(Json{{"id", o.id}, {"child", o.child}});
    blocks[id] = Json{{"rects", rects}, {"occs", occs}};
  }
  return Json{{"top", instance.top}, {"blocks", blocks}};
}

Instance instance_from_json(const Json& json) {
  try {
    Instance instance;
    instance.top = json.at("top").get<std::string>();
    for (const auto& [id, jb] : json.at("blocks").items()) {
      Block block;
      block.id = id;
      if (jb.contains("rects")) {
        for (const auto& jr : jb.at("rects")) {
          Rectangle r;
          r.id = jr.at("id").get<std::string>();
          for (const auto& jv : jr.at("variants")) {
            if (!jv.is_array() || jv.size() != 2) throw Error("variant of '" + r.id + "' must be [w, h]");
            r.variants.push_back({jv[0].get<Length>(), jv[1].get<Length>()});
          }
          block.rects.push_back(std::move(r));
        }
      }
      if (jb.contains("occs")) {
        for (const auto& jo : jb.at("occs")) {
          block.occs.push_back({jo.at("id").get<std::string>(), jo.at("child").get<std::string>()});
        }
      }
      instance.blocks.emplace(id, std::move(block));
    }
    return instance;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed instance JSON: ") + e.what());
  }
}

Json layout_to_json(const BlockLayout& layout) {
  Json placements = Json::array();
  for (const auto& p : layout.placements) {
    Json jp{{"id", p.id}, {"x", p.x}, {"y", p.y}, {"w", p.w}, {"h", p.h}};
    if (p.variant) jp["variant"] = *p.variant;
    placements.push_back(std::move(jp));
  }
  return Json{{"w", layout.w}, {"h", layout.h}, {"placements", placements}};
}

BlockLayout layout_from_json(const Json& json) {
  BlockLayout layout;
  layout.w = json.at("w").get<Length>();
  layout.h = json.at("h").get<Length>();
  for (const auto& jp : json.at("placements")) {
    Placement p;
    p.id = jp.at("id").get<std::string>();
    p.x = jp.at("x").get<Length>();
    p.y = jp.at("y").get<Length>();
    p.w = jp.at("w").get<Length>();
    p.h = jp.at("h").get<Length>();
    if (jp.contains("variant") && !jp.at("variant").is_null()) p.variant = jp.at("variant").get<int>();
    layout.placements.push_back(std::move(p));
  }
  return layout;
}

Json solution_to_json(const Solution& solution) {
  Json layouts = Json::object();
  for (const auto& [id, layout] : solution.layouts) layouts[id] = layout_to_json(layout);
  return Json{{"layouts", layouts}};
}

Solution solution_from_json(const Json& json) {
  try {
    Solution solution;
    for (const auto& [id, jl] : json.at("layouts").items()) solution.layouts.emplace(id, layout_from_json(jl));
    return solution;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed solution JSON: ") + e.what());
  }
}

std::vector<ObjectSpec> objects_from_json(const Json& json) {
  try {
    std::vector<ObjectSpec> objects;
    for (const auto& jo : json.at("objects")) {
      ObjectSpec o;
      o.id = jo.at("id").get<std::string>();
      for (const auto& jd : jo.at("options")) {
        if (!jd.is_array() || jd.size() != 2) throw Error("option of '" + o.id + "' must be [w, h]");
        o.options.push_back({jd[0].get<Length>(), jd[1].get<Length>()});
      }
      if (jo.contains("group") && !jo.at("group").is_null()) o.group = jo.at("group").get<std::string>();
      objects.push_back(std::move(o));
    }
    validate_objects(objects);
    return objects;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed objects: ") + e.what());
  }
}

Json objects_to_json(const std::vector<ObjectSpec>& objects) {
  Json arr = Json::array();
  for (const auto& o : objects) {
    Json options = Json::array();
    for (const auto& d : o.options) options.push_back(Json::array({d.w, d.h}));
    Json jo{{"id", o.id}, {"options", options}};
    if (o.group) jo["group"] = *o.group;
    arr.push_back(std::move(jo));
  }
  return Json{{"objects", arr}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("cannot parse '" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& json) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << json.dump(2) << '\n';
}

}  // namespace hpack
