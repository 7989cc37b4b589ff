// Copyright 2026 The Reachbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "reachbench/codegen/export_c.h"

#include <cctype>
#include <set>
#include <sstream>

namespace reachbench::codegen {
namespace {

std::string c_identifier(const std::string& name) {
  std::string out;
  for (char ch : name) {
    const auto u = static_cast<unsigned char>(ch);
    out += std::isalnum(u) != 0 ? ch : '_';
  }
  return out;
}

class Emitter {
 public:
  Emitter(const ParserProgram& program, std::uint64_t budget)
      : program_(program), budget_(budget) {
    std::set<std::string> used;
    for (const Procedure& proc : program.procedures) {
      std::string id = "rb_parse_" + c_identifier(proc.name);
      if (!used.insert(id).second) {
        id += "_" + std::to_string(proc.nonterminal);
        used.insert(id);
      }
      fn_.push_back(id);
    }
  }

  std::string emit() {
    std::ostringstream body;
    for (const Procedure& proc : program_.procedures) emit_procedure(body, proc);

    std::ostringstream os;
    os << "/* Recursive-descent parser emitted by reachbench.\n"
       << " * grammar sha256: " << program_.source_grammar_digest << "\n"
       << " */\n"
       << "#include <setjmp.h>\n#include <stdio.h>\n#include <stdlib.h>\n"
       << "#include <string.h>\n\n"
       << "#define RB_NUM_ELEMENTS " << program_.num_elements() << "\n"
       << "#define RB_STEP_BUDGET " << budget_ << "ULL\n"
       << "#define RB_DEAD_GUARD 0\n\n"
       << "static unsigned char rb_hit[RB_NUM_ELEMENTS > 0 ? RB_NUM_ELEMENTS "
          ": 1];\n"
       << "static const unsigned char *rb_in;\n"
       << "static size_t rb_len;\n"
       << "static size_t rb_pos;\n"
       << "static unsigned long long rb_steps;\n"
       << "static jmp_buf rb_env;\n\n"
       << "static int rb_la(void) {\n"
       << "  return rb_pos < rb_len ? (int)rb_in[rb_pos] : 256;\n}\n\n"
       << "static _Noreturn void rb_fail(int element) {\n"
       << "  if (element >= 0) rb_hit[element] = 1;\n"
       << "  longjmp(rb_env, 1);\n}\n\n"
       << "static void rb_tick(void) {\n"
       << "  if (++rb_steps > RB_STEP_BUDGET) longjmp(rb_env, 2);\n}\n\n";
    if (uses_expect_) {
      os << "static void rb_expect(int token, int element) {\n"
         << "  rb_tick();\n"
         << "  if (rb_la() != token) rb_fail(element);\n"
         << "  ++rb_pos;\n}\n\n";
    }
    for (const std::string& f : fn_) os << "void " << f << "(void);\n";
    os << "\n" << body.str();
    emit_main(os);
    return os.str();
  }

 private:
  int counted_or_none(ElementId id) const {
    return program_.counted[id] ? static_cast<int>(id) : -1;
  }

  void emit_hit(std::ostream& os, const char* indent, ElementId id) const {
    if (program_.counted[id]) os << indent << "rb_hit[" << id << "] = 1;\n";
  }

  void emit_body(std::ostream& os, const char* indent, const Procedure& proc,
                 const Arm& arm) {
    const int err = counted_or_none(proc.error_exit);
    for (const grammar::Symbol& s : arm.body) {
      if (s.is_terminal()) {
        uses_expect_ = true;
        os << indent << "rb_expect(" << s.id << ", " << err << ");\n";
      } else if (s.is_nonterminal()) {
        os << indent << "rb_tick();\n"
           << indent << fn_.at(s.id) << "();\n";
      } else {
        os << indent << "rb_tick();\n";
      }
    }
  }

  void emit_procedure(std::ostream& os, const Procedure& proc) {
    const int err = counted_or_none(proc.error_exit);
    const bool loop = proc.has_loop;
    const char* in1 = loop ? "    " : "  ";
    const char* in2 = loop ? "      " : "    ";
    const char* in3 = loop ? "        " : "      ";
    os << "void " << fn_.at(proc.nonterminal) << "(void) {\n";
    if (loop) os << "  for (;;) {\n";
    os << in1 << "rb_tick();\n" << in1 << "switch (rb_la()) {\n";

    grammar::TokenSet assigned;
    for (int t = 0; t < grammar::kTokenCount; ++t) {
      if (proc.dispatch[t] >= 0) assigned.set(t);
    }
    for (std::size_t a = 0; a < proc.arms.size(); ++a) {
      const Arm& arm = proc.arms[a];
      std::vector<int> labels;
      for (int t = 0; t < grammar::kTokenCount; ++t) {
        if (arm.dead) {
          if (arm.predict.test(t) && !assigned.test(t)) {
            labels.push_back(t);
            assigned.set(t);
          }
        } else if (proc.dispatch[t] == static_cast<int>(a)) {
          labels.push_back(t);
        }
      }
      if (labels.empty()) continue;
      os << in1;
      for (std::size_t i = 0; i < labels.size(); ++i) {
        os << (i == 0 ? "" : " ") << "case " << labels[i] << ":";
      }
      os << "\n";
      if (arm.dead) {
        os << in2 << "if (RB_DEAD_GUARD) {\n";
        emit_hit(os, in3, arm.element);
        if (arm.guard) emit_hit(os, in3, *arm.guard);
        emit_body(os, in3, proc, arm);
        os << in3 << "return;\n" << in2 << "}\n"
           << in2 << "rb_fail(" << err << ");\n";
        continue;
      }
      emit_hit(os, in2, arm.element);
      emit_body(os, in2, proc, arm);
      os << in2 << (arm.loops ? "continue;\n" : "return;\n");
    }
    os << in1 << "default:\n" << in2 << "rb_fail(" << err << ");\n"
       << in1 << "}\n";
    if (loop) os << "  }\n";
    os << "}\n\n";
  }

  void emit_main(std::ostream& os) const {
    const std::string start = fn_.at(program_.start);
    os << "static int rb_run(const unsigned char *data, size_t len) {\n"
       << "  memset(rb_hit, 0, sizeof rb_hit);\n"
       << "  rb_in = data;\n  rb_len = len;\n  rb_pos = 0;\n  rb_steps = 0;\n"
       << "  if (setjmp(rb_env) != 0) return 0;\n"
       << "  " << start << "();\n"
       << "  return rb_pos == rb_len;\n}\n\n"
       << "static unsigned char *rb_read_all(FILE *f, size_t *len) {\n"
       << "  size_t cap = 4096, n = 0, got;\n"
       << "  unsigned char *buf = malloc(cap);\n"
       << "  if (buf == NULL) exit(2);\n"
       << "  while ((got = fread(buf + n, 1, cap - n, f)) > 0) {\n"
       << "    n += got;\n"
       << "    if (n == cap) {\n"
       << "      unsigned char *grown = realloc(buf, cap * 2);\n"
       << "      if (grown == NULL) exit(2);\n"
       << "      buf = grown;\n      cap *= 2;\n    }\n  }\n"
       << "  *len = n;\n  return buf;\n}\n\n"
       << "static int rb_batch(void) {\n"
       << "  unsigned char hdr[4];\n"
       << "  unsigned char *buf = NULL;\n"
       << "  size_t cap = 0;\n"
       << "  while (fread(hdr, 1, 4, stdin) == 4) {\n"
       << "    size_t len = (size_t)hdr[0] | ((size_t)hdr[1] << 8) |\n"
       << "                 ((size_t)hdr[2] << 16) | ((size_t)hdr[3] << 24);\n"
       << "    size_t i;\n"
       << "    int ok;\n"
       << "    if (len > cap) {\n"
       << "      unsigned char *grown = realloc(buf, len);\n"
       << "      if (grown == NULL) return 2;\n"
       << "      buf = grown;\n      cap = len;\n    }\n"
       << "    if (len > 0 && fread(buf, 1, len, stdin) != len) return 2;\n"
       << "    ok = rb_run(buf, len);\n"
       << "    fputs(ok ? \"accept\" : \"reject\", stdout);\n"
       << "    for (i = 0; i < RB_NUM_ELEMENTS; ++i) {\n"
       << "      if (rb_hit[i]) printf(\" %lu\", (unsigned long)i);\n"
       << "    }\n"
       << "    fputc('\\n', stdout);\n  }\n"
       << "  free(buf);\n  return 0;\n}\n\n"
       << "int main(int argc, char **argv) {\n"
       << "  size_t len, i;\n"
       << "  unsigned char *data;\n"
       << "  int ok;\n"
       << "  if (argc > 1 && strcmp(argv[1], \"--batch\") == 0) return "
          "rb_batch();\n"
       << "  data = rb_read_all(stdin, &len);\n"
       << "  ok = rb_run(data, len);\n"
       << "  for (i = 0; i < RB_NUM_ELEMENTS; ++i) {\n"
       << "    if (rb_hit[i]) printf(\"%lu\\n\", (unsigned long)i);\n"
       << "  }\n"
       << "  fputs(ok ? \"accept\\n\" : \"reject\\n\", stderr);\n"
       << "  free(data);\n  return 0;\n}\n";
  }

  const ParserProgram& program_;
  std::uint64_t budget_;
  std::vector<std::string> fn_;
  bool uses_expect_ = false;
};

}  // namespace

std::string export_c_source(const ParserProgram& program,
                            std::uint64_t step_budget) {
  return Emitter(program, step_budget).emit();
}

}  // namespace reachbench::codegen
