// Copyright 2026 The smomass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "smomass/urdf.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "smomass/errors.hpp"

namespace smomass {

namespace pt = boost::property_tree;

namespace {

struct RawJoint {
  Joint joint;
  std::string parent_name;
  std::string child_name;
};

std::vector<double> parseNumbers(const std::string& text, const std::string& context) {
  std::vector<double> out;
  const char* p = text.data();
  const char* end = p + text.size();
  while (p < end) {
    while (p < end && std::isspace(static_cast<unsigned char>(*p))) ++p;
    if (p == end) break;
    double v = 0.0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc()) throw ParseError("bad number in " + context + ": '" + text + "'");
    out.push_back(v);
    p = next;
  }
  return out;
}

Eigen::Vector3d parseVector3(const std::string& text, const std::string& context) {
  auto v = parseNumbers(text, context);
  if (v.size() != 3) throw ParseError(context + " expects three numbers, got '" + text + "'");
  return {v[0], v[1], v[2]};
}

double parseScalar(const std::string& text, const std::string& context) {
  auto v = parseNumbers(text, context);
  if (v.size() != 1) throw ParseError(context + " expects one number, got '" + text + "'");
  return v[0];
}

std::optional<std::string> attribute(const pt::ptree& node, const std::string& key) {
  if (auto a = node.get_child_optional("<xmlattr>." + key)) return a->data();
  return std::nullopt;
}

std::string requireAttribute(const pt::ptree& node, const std::string& key, const std::string& context) {
  auto a = attribute(node, key);
  if (!a) throw ParseError(context + " is missing attribute '" + key + "'");
  return *a;
}

Eigen::Isometry3d parseOrigin(const pt::ptree& parent, const std::string& context) {
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  auto origin = parent.get_child_optional("origin");
  if (!origin) return t;
  if (auto xyz = attribute(*origin, "xyz")) t.translation() = parseVector3(*xyz, context + " origin xyz");
  if (auto rpy = attribute(*origin, "rpy")) t.linear() = rotationFromRpy(parseVector3(*rpy, context + " origin rpy"));
  return t;
}

void warn(Diagnostics* diagnostics, const std::string& message) {
  if (diagnostics) {
    diagnostics->warnings.push_back(message);
  } else {
    std::cerr << "urdf: warning: " << message << '\n';
  }
}

Link parseLink(const pt::ptree& node, Diagnostics* diagnostics, bool& has_inertial) {
  Link link;
  link.name = requireAttribute(node, "name", "link");
  const std::string ctx = "link '" + link.name + "'";
  has_inertial = false;
  for (const auto& [key, child] : node) {
    if (key == "visual" || key == "collision") {
      warn(diagnostics, ctx + ": ignoring <" + key + ">");
    } else if (key == "inertial") {
      has_inertial = true;
      const Eigen::Isometry3d frame = parseOrigin(child, ctx + " inertial");
      auto mass = child.get_child_optional("mass");
      auto inertia = child.get_child_optional("inertia");
      if (!mass || !inertia) throw ValidationError(ctx + " has incomplete inertial data (mass and inertia are required)");
      link.mass = parseScalar(requireAttribute(*mass, "value", ctx + " mass"), ctx + " mass");
      auto get = [&](const char* k) { return parseScalar(requireAttribute(*inertia, k, ctx + " inertia"), ctx + " inertia"); };
      Eigen::Matrix3d I;
      I << get("ixx"), get("ixy"), get("ixz"),
           get("ixy"), get("iyy"), get("iyz"),
           get("ixz"), get("iyz"), get("izz");
      const Eigen::Matrix3d& R = frame.linear();
      link.inertia = R * I * R.transpose();
      link.inertia = 0.5 * (link.inertia + link.inertia.transpose());
      link.center_of_mass = frame.translation();
    }
  }
  return link;
}

RawJoint parseJoint(const pt::ptree& node) {
  RawJoint raw;
  Joint& j = raw.joint;
  j.name = requireAttribute(node, "name", "joint");
  const std::string ctx = "joint '" + j.name + "'";
  const std::string type = requireAttribute(node, "type", ctx);
  if (type == "revolute") {
    j.kind = JointKind::Revolute;
  } else if (type == "continuous") {
    j.kind = JointKind::Continuous;
  } else if (type == "fixed") {
    j.kind = JointKind::Fixed;
  } else if (type == "prismatic" || type == "planar" || type == "floating") {
    throw UnsupportedJointError(ctx + " has unsupported type '" + type +
                                "' (only revolute, continuous and fixed joints are supported)");
  } else {
    throw ParseError(ctx + " has unknown type '" + type + "'");
  }

  auto parent = node.get_child_optional("parent");
  auto child = node.get_child_optional("child");
  if (!parent || !child) throw ParseError(ctx + " needs <parent> and <child>");
  raw.parent_name = requireAttribute(*parent, "link", ctx + " parent");
  raw.child_name = requireAttribute(*child, "link", ctx + " child");
  j.origin = parseOrigin(node, ctx);

  if (j.movable()) {
    Eigen::Vector3d axis = Eigen::Vector3d::UnitX();
    if (auto a = node.get_child_optional("axis")) {
      if (auto xyz = attribute(*a, "xyz")) axis = parseVector3(*xyz, ctx + " axis");
    }
    if (axis.norm() < 1e-12) throw ValidationError(ctx + " has a zero rotation axis");
    j.axis = axis.normalized();
  }

  if (auto lim = node.get_child_optional("limit")) {
    JointLimits limits;
    auto lower = attribute(*lim, "lower");
    auto upper = attribute(*lim, "upper");
    if (j.kind == JointKind::Revolute && (lower || upper)) {
      limits.has_position = true;
      limits.lower = lower ? parseScalar(*lower, ctx + " limit") : 0.0;
      limits.upper = upper ? parseScalar(*upper, ctx + " limit") : 0.0;
    }
    if (auto e = attribute(*lim, "effort")) limits.effort = parseScalar(*e, ctx + " limit effort");
    if (auto v = attribute(*lim, "velocity")) limits.velocity = parseScalar(*v, ctx + " limit velocity");
    if (j.movable()) j.limits = limits;
  }

  if (auto dyn = node.get_child_optional("dynamics")) {
    if (auto d = attribute(*dyn, "damping")) j.viscous_friction = parseScalar(*d, ctx + " damping");
  }
  return raw;
}

void rejectXacro(std::string_view text) {
  if (text.find("xmlns:xacro") != std::string_view::npos || text.find("<xacro:") != std::string_view::npos) {
    throw ParseError(
        "document uses xacro macros; expand it first (e.g. `xacro robot.urdf.xacro > robot.urdf`)");
  }
}

/// Orders joints depth-first from the root, siblings in document order, and
/// renumbers links to match.
KinematicModel assemble(std::string name, std::vector<Link> links, const std::vector<bool>& has_inertial,
                        std::vector<RawJoint> raw) {
  std::map<std::string, int> link_index;
  for (std::size_t i = 0; i < links.size(); ++i) {
    if (!link_index.emplace(links[i].name, static_cast<int>(i)).second)
      throw ParseError("duplicate link '" + links[i].name + "'");
  }
  std::vector<int> parent_of(links.size(), -1);
  std::vector<std::vector<int>> children(links.size());
  for (std::size_t j = 0; j < raw.size(); ++j) {
    auto p = link_index.find(raw[j].parent_name);
    auto c = link_index.find(raw[j].child_name);
    if (p == link_index.end())
      throw TopologyError("joint '" + raw[j].joint.name + "' references unknown parent link '" + raw[j].parent_name + "'");
    if (c == link_index.end())
      throw TopologyError("joint '" + raw[j].joint.name + "' references unknown child link '" + raw[j].child_name + "'");
    if (parent_of[static_cast<std::size_t>(c->second)] >= 0)
      throw TopologyError("link '" + raw[j].child_name + "' has more than one parent joint");
    parent_of[static_cast<std::size_t>(c->second)] = static_cast<int>(j);
    children[static_cast<std::size_t>(p->second)].push_back(static_cast<int>(j));
  }
  int root = -1;
  for (std::size_t i = 0; i < links.size(); ++i) {
    if (parent_of[i] < 0) {
      if (root >= 0) throw TopologyError("links '" + links[static_cast<std::size_t>(root)].name + "' and '" +
                                         links[i].name + "' are both roots; the model is disconnected");
      root = static_cast<int>(i);
    }
  }
  if (root < 0) throw TopologyError("kinematic graph has no root (cycle)");

  KinematicModel model;
  model.name = std::move(name);
  std::vector<int> new_link(links.size(), -1);
  new_link[static_cast<std::size_t>(root)] = 0;
  model.links.push_back(links[static_cast<std::size_t>(root)]);

  int dof = 0;
  std::function<void(int)> visit = [&](int link) {
    for (int j : children[static_cast<std::size_t>(link)]) {
      RawJoint& r = raw[static_cast<std::size_t>(j)];
      const int child_old = link_index.at(r.child_name);
      new_link[static_cast<std::size_t>(child_old)] = static_cast<int>(model.links.size());
      model.links.push_back(links[static_cast<std::size_t>(child_old)]);
      Joint joint = r.joint;
      joint.parent = new_link[static_cast<std::size_t>(link)];
      joint.child = new_link[static_cast<std::size_t>(child_old)];
      joint.dof_index = joint.movable() ? dof++ : -1;
      model.joints.push_back(std::move(joint));
      visit(child_old);
    }
  };
  visit(root);
  if (model.links.size() != links.size()) throw TopologyError("kinematic graph contains a cycle");

  for (std::size_t i = 0; i < links.size(); ++i) {
    if (static_cast<int>(i) != root && !has_inertial[i])
      throw ValidationError("link '" + links[i].name + "' is missing <inertial> data");
  }
  validate(model);
  return model;
}

std::string formatDouble(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::string formatVector(const Eigen::Vector3d& v) {
  return formatDouble(v.x()) + " " + formatDouble(v.y()) + " " + formatDouble(v.z());
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open URDF file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Eigen::Matrix3d rotationFromRpy(const Eigen::Vector3d& rpy) {
  return (Eigen::AngleAxisd(rpy.z(), Eigen::Vector3d::UnitZ()) * Eigen::AngleAxisd(rpy.y(), Eigen::Vector3d::UnitY()) *
          Eigen::AngleAxisd(rpy.x(), Eigen::Vector3d::UnitX()))
      .toRotationMatrix();
}

Eigen::Vector3d rpyFromRotation(const Eigen::Matrix3d& r) {
  const double pitch = -std::asin(std::clamp(r(2, 0), -1.0, 1.0));
  double roll = 0.0;
  double yaw = 0.0;
  if (std::abs(r(2, 0)) < 1.0 - 1e-12) {
    roll = std::atan2(r(2, 1), r(2, 2));
    yaw = std::atan2(r(1, 0), r(0, 0));
  } else {
    yaw = std::atan2(-r(0, 1), r(1, 1));
  }
  return {roll, pitch, yaw};
}

KinematicModel parseUrdfTree(std::string_view text, Diagnostics* diagnostics) {
  rejectXacro(text);
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::read_xml(in, tree, pt::xml_parser::no_comments);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError("malformed XML: " + e.message(), static_cast<int>(e.line()));
  }
  auto robot = tree.get_child_optional("robot");
  if (!robot) throw ParseError("document has no <robot> element");

  std::vector<Link> links;
  std::vector<bool> has_inertial;
  std::vector<RawJoint> joints;
  for (const auto& [key, node] : *robot) {
    if (key == "link") {
      bool inertial = false;
      links.push_back(parseLink(node, diagnostics, inertial));
      has_inertial.push_back(inertial);
    } else if (key == "joint") {
      joints.push_back(parseJoint(node));
    }
  }
  if (links.empty()) throw ParseError("robot has no <link> elements");
  return assemble(attribute(*robot, "name").value_or(""), std::move(links), has_inertial, std::move(joints));
}

KinematicModel parseUrdf(std::string_view text, Diagnostics* diagnostics) {
  KinematicModel model = parseUrdfTree(text, diagnostics);
  if (!model.isSerialChain()) {
    for (std::size_t l = 0; l < model.links.size(); ++l) {
      std::vector<std::string> kids;
      for (const auto& j : model.joints)
        if (j.parent == static_cast<int>(l)) kids.push_back(j.name);
      if (kids.size() > 1) {
        std::string list;
        for (const auto& k : kids) list += (list.empty() ? "" : ", ") + k;
        throw TopologyError("link '" + model.links[l].name + "' branches into joints [" + list +
                            "]; extract a base-to-tip chain first");
      }
    }
  }
  return model;
}

KinematicModel parseUrdf(std::string_view text, const std::string& base_link, const std::string& tip_link,
                         Diagnostics* diagnostics) {
  return extractChain(parseUrdfTree(text, diagnostics), base_link, tip_link);
}

KinematicModel loadUrdfFile(const std::string& path, Diagnostics* diagnostics) {
  return parseUrdf(readFile(path), diagnostics);
}

KinematicModel loadUrdfFile(const std::string& path, const std::string& base_link, const std::string& tip_link,
                            Diagnostics* diagnostics) {
  return parseUrdf(readFile(path), base_link, tip_link, diagnostics);
}

namespace {

/// Adds a rigid body (mass, com, inertia about com, in frame `t` coordinates
/// relative to the target link frame) to `link`.
void lumpInto(Link& link, const Eigen::Isometry3d& t, const Link& body) {
  if (body.mass <= 0.0 && body.inertia.isZero(0.0)) return;
  const double m1 = link.mass;
  const double m2 = body.mass;
  const double m = m1 + m2;
  const Eigen::Vector3d c1 = link.center_of_mass;
  const Eigen::Vector3d c2 = t * body.center_of_mass;
  const Eigen::Matrix3d i2 = t.linear() * body.inertia * t.linear().transpose();
  const Eigen::Vector3d c = m > 0.0 ? Eigen::Vector3d((m1 * c1 + m2 * c2) / m) : c1;
  auto shift = [](double mass, const Eigen::Vector3d& d) -> Eigen::Matrix3d {
    return mass * (d.squaredNorm() * Eigen::Matrix3d::Identity() - d * d.transpose());
  };
  link.inertia = link.inertia + shift(m1, c1 - c) + i2 + shift(m2, c2 - c);
  link.inertia = 0.5 * (link.inertia + link.inertia.transpose());
  link.center_of_mass = c;
  link.mass = m;
}

}  // namespace

KinematicModel extractChain(const KinematicModel& model, const std::string& base_link, const std::string& tip_link) {
  const int base = model.linkIndex(base_link);
  const int tip = model.linkIndex(tip_link);

  std::vector<int> parent_joint(model.links.size(), -1);
  for (std::size_t j = 0; j < model.joints.size(); ++j)
    parent_joint[static_cast<std::size_t>(model.joints[j].child)] = static_cast<int>(j);

  std::vector<int> path;  // joints from tip up to base
  int link = tip;
  while (link != base) {
    const int j = parent_joint[static_cast<std::size_t>(link)];
    if (j < 0)
      throw TopologyError("no kinematic path from '" + base_link + "' down to '" + tip_link +
                          "' (base must be an ancestor of tip)");
    path.push_back(j);
    link = model.joints[static_cast<std::size_t>(j)].parent;
  }
  std::reverse(path.begin(), path.end());

  std::vector<bool> on_chain(model.links.size(), false);
  on_chain[static_cast<std::size_t>(base)] = true;
  for (int j : path) on_chain[static_cast<std::size_t>(model.joints[static_cast<std::size_t>(j)].child)] = true;

  KinematicModel out;
  out.name = model.name;
  out.links.push_back(model.links[static_cast<std::size_t>(base)]);
  std::vector<int> new_index(model.links.size(), -1);
  new_index[static_cast<std::size_t>(base)] = 0;
  int dof = 0;
  for (int j : path) {
    Joint joint = model.joints[static_cast<std::size_t>(j)];
    const int old_child = joint.child;
    joint.parent = new_index[static_cast<std::size_t>(joint.parent)];
    joint.child = static_cast<int>(out.links.size());
    joint.dof_index = joint.movable() ? dof++ : -1;
    new_index[static_cast<std::size_t>(old_child)] = joint.child;
    out.links.push_back(model.links[static_cast<std::size_t>(old_child)]);
    out.joints.push_back(std::move(joint));
  }

  // Lump off-chain subtrees (frozen at zero angle) into their chain ancestor.
  // Joints are topologically ordered, so one forward pass assigns each
  // off-chain link its owning chain link and zero-angle transform.
  std::vector<int> owner(model.links.size(), -1);
  std::vector<Eigen::Isometry3d> to_owner(model.links.size(), Eigen::Isometry3d::Identity());
  for (std::size_t l = 0; l < model.links.size(); ++l)
    if (on_chain[l]) owner[l] = static_cast<int>(l);
  for (const auto& joint : model.joints) {
    const auto c = static_cast<std::size_t>(joint.child);
    const auto p = static_cast<std::size_t>(joint.parent);
    if (on_chain[c] || owner[p] < 0) continue;
    owner[c] = owner[p];
    to_owner[c] = to_owner[p] * joint.origin;
  }
  for (std::size_t l = 0; l < model.links.size(); ++l) {
    if (on_chain[l] || owner[l] < 0) continue;
    const int target = owner[l];
    if (target == base) continue;  // rigidly attached to the fixed base
    lumpInto(out.links[static_cast<std::size_t>(new_index[static_cast<std::size_t>(target)])], to_owner[l],
             model.links[l]);
  }

  // Gravity in the new base frame (everything above the base frozen at zero).
  Eigen::Matrix3d base_rotation = Eigen::Matrix3d::Identity();
  for (int l = base; parent_joint[static_cast<std::size_t>(l)] >= 0;) {
    const Joint& joint = model.joints[static_cast<std::size_t>(parent_joint[static_cast<std::size_t>(l)])];
    base_rotation = joint.origin.linear() * base_rotation;
    l = joint.parent;
  }
  out.gravity = base_rotation.transpose() * model.gravity;
  validate(out);
  return out;
}

std::string toUrdf(const KinematicModel& model) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\"?>\n<robot name=\"" << model.name << "\">\n";
  for (const auto& link : model.links) {
    const Eigen::Matrix3d& I = link.inertia;
    os << "  <link name=\"" << link.name << "\">\n"
       << "    <inertial>\n"
       << "      <origin xyz=\"" << formatVector(link.center_of_mass) << "\" rpy=\"0 0 0\"/>\n"
       << "      <mass value=\"" << formatDouble(link.mass) << "\"/>\n"
       << "      <inertia ixx=\"" << formatDouble(I(0, 0)) << "\" ixy=\"" << formatDouble(I(0, 1)) << "\" ixz=\""
       << formatDouble(I(0, 2)) << "\" iyy=\"" << formatDouble(I(1, 1)) << "\" iyz=\"" << formatDouble(I(1, 2))
       << "\" izz=\"" << formatDouble(I(2, 2)) << "\"/>\n"
       << "    </inertial>\n"
       << "  </link>\n";
  }
  for (const auto& joint : model.joints) {
    const char* type = joint.kind == JointKind::Revolute ? "revolute"
                       : joint.kind == JointKind::Continuous ? "continuous"
                                                             : "fixed";
    os << "  <joint name=\"" << joint.name << "\" type=\"" << type << "\">\n"
       << "    <parent link=\"" << model.links[static_cast<std::size_t>(joint.parent)].name << "\"/>\n"
       << "    <child link=\"" << model.links[static_cast<std::size_t>(joint.child)].name << "\"/>\n"
       << "    <origin xyz=\"" << formatVector(joint.origin.translation()) << "\" rpy=\""
       << formatVector(rpyFromRotation(joint.origin.linear())) << "\"/>\n";
    if (joint.movable()) {
      os << "    <axis xyz=\"" << formatVector(joint.axis) << "\"/>\n";
      if (joint.limits) {
        os << "    <limit";
        if (joint.limits->has_position)
          os << " lower=\"" << formatDouble(joint.limits->lower) << "\" upper=\"" << formatDouble(joint.limits->upper)
             << "\"";
        os << " effort=\"" << formatDouble(joint.limits->effort) << "\" velocity=\""
           << formatDouble(joint.limits->velocity) << "\"/>\n";
      }
      os << "    <dynamics damping=\"" << formatDouble(joint.viscous_friction) << "\"/>\n";
    }
    os << "  </joint>\n";
  }
  os << "</robot>\n";
  return os.str();
}

}  // namespace smomass
