#include <algorithm>
#include <sstream>

#include "hydra/expr.hpp"

namespace hydra::expr {

void Session::reset() {
    env.clear();  // handles into the old universe go first
    universe = std::make_unique<Universe>(limits);
    def_order.clear();
    print_depth.reset();
    quit_requested = false;
}

namespace {

struct DefEntry {
    enum class Kind { Flat, Alias, Strict };

    std::string name;
    Pos pos;
    Kind kind = Kind::Flat;

    // Flat: the equation's members
    std::vector<std::string> member_refs;   // batch variables
    std::vector<HSet> member_constants;     // already-solved values
    // Alias
    std::string alias_target;
    // Strict: evaluated once its dependencies are solved
    Node strict_expr;

    std::vector<std::uint32_t> deps;  // indices into the batch
};

class Evaluator {
public:
    Evaluator(Session& session, const Program& program)
        : session_(session), program_(program) {}

    EvalOutput run() {
        collect_definitions();
        solve_batch();
        execute_statements();
        return std::move(output_);
    }

private:
    // ---- batch construction -------------------------------------------

    bool is_batch_name(const std::string& name) const {
        return batch_index_.count(name) > 0;
    }

    std::uint32_t batch_of(const std::string& name) const { return batch_index_.at(name); }

    std::uint32_t add_entry(DefEntry entry) {
        const std::uint32_t index = static_cast<std::uint32_t>(batch_.size());
        batch_index_.emplace(entry.name, index);
        batch_.push_back(std::move(entry));
        return index;
    }

    std::string fresh_name() { return "$" + std::to_string(fresh_counter_++); }

    // Binder expressions become batch definitions; the expression itself
    // becomes a reference to the bound variable.
    Node lift_binders(const Node& node) {
        if (node.kind == Node::Kind::Binder) {
            DefEntry entry;
            entry.name = node.name;
            entry.pos = node.pos;
            const std::uint32_t index = add_entry(std::move(entry));
            define_from(index, lift_binders(node.children[0]));
            Node ref;
            ref.kind = Node::Kind::Name;
            ref.pos = node.pos;
            ref.name = node.name;
            return ref;
        }
        Node out = node;
        out.children.clear();
        for (const Node& child : node.children) out.children.push_back(lift_binders(child));
        return out;
    }

    // Fills in the shape of a batch entry from its (binder-free) right-hand
    // side. Set literals stay co-recursive; anything else is strict.
    // add_entry may reallocate the batch, so always index it afresh.
    void define_from(std::uint32_t index, Node rhs) {
        switch (rhs.kind) {
            case Node::Kind::SetLiteral: {
                batch_[index].kind = DefEntry::Kind::Flat;
                for (Node& member : rhs.children) {
                    if (member.kind == Node::Kind::Name) {
                        batch_[index].member_refs.push_back(member.name);
                    } else {
                        // nested term: introduce a fresh variable for it
                        DefEntry fresh;
                        fresh.name = fresh_name();
                        fresh.pos = member.pos;
                        const std::string name = fresh.name;
                        const std::uint32_t fresh_index = add_entry(std::move(fresh));
                        define_from(fresh_index, std::move(member));
                        batch_[index].member_refs.push_back(name);
                    }
                }
                break;
            }
            case Node::Kind::Name:
                batch_[index].kind = DefEntry::Kind::Alias;
                batch_[index].alias_target = rhs.name;
                break;
            default:
                batch_[index].kind = DefEntry::Kind::Strict;
                batch_[index].strict_expr = std::move(rhs);
                break;
        }
    }

    void collect_definitions() {
        rewritten_.reserve(program_.statements.size());
        for (const Statement& st : program_.statements) {
            Statement out = st;
            out.exprs.clear();
            if (st.kind == Statement::Kind::Definition) {
                DefEntry entry;
                entry.name = st.name;
                entry.pos = st.pos;
                const std::uint32_t index = add_entry(std::move(entry));
                define_from(index, lift_binders(st.exprs[0]));
                user_defs_.push_back(st.name);
            } else {
                for (const Node& e : st.exprs) out.exprs.push_back(lift_binders(e));
            }
            rewritten_.push_back(std::move(out));
        }
    }

    // ---- dependency analysis and solving -------------------------------

    void scan_free_names(const Node& node, std::vector<std::uint32_t>& deps) {
        if (node.kind == Node::Kind::Name) {
            if (is_batch_name(node.name)) {
                deps.push_back(batch_of(node.name));
            } else if (!session_.env.count(node.name)) {
                throw EvalError("unbound name '" + node.name + "' at " +
                                std::to_string(node.pos.line) + ":" +
                                std::to_string(node.pos.col));
            }
        }
        for (const Node& child : node.children) scan_free_names(child, deps);
    }

    void compute_dependencies() {
        for (DefEntry& entry : batch_) {
            switch (entry.kind) {
                case DefEntry::Kind::Flat:
                    for (const std::string& ref : entry.member_refs) {
                        if (is_batch_name(ref)) {
                            entry.deps.push_back(batch_of(ref));
                        } else if (!session_.env.count(ref)) {
                            throw EvalError("unbound name '" + ref + "' at " +
                                            std::to_string(entry.pos.line) + ":" +
                                            std::to_string(entry.pos.col));
                        }
                    }
                    break;
                case DefEntry::Kind::Alias:
                    if (is_batch_name(entry.alias_target)) {
                        entry.deps.push_back(batch_of(entry.alias_target));
                    } else if (!session_.env.count(entry.alias_target)) {
                        throw EvalError("unbound name '" + entry.alias_target + "' at " +
                                        std::to_string(entry.pos.line) + ":" +
                                        std::to_string(entry.pos.col));
                    }
                    break;
                case DefEntry::Kind::Strict:
                    scan_free_names(entry.strict_expr, entry.deps);
                    break;
            }
        }
    }

    // Tarjan; emits strongly connected components with all dependencies in
    // earlier components.
    std::vector<std::vector<std::uint32_t>> scc_order() {
        const std::uint32_t n = static_cast<std::uint32_t>(batch_.size());
        std::vector<std::uint32_t> index(n, UINT32_MAX), low(n, 0);
        std::vector<char> on_stack(n, 0);
        std::vector<std::uint32_t> stack;
        std::vector<std::vector<std::uint32_t>> components;
        std::uint32_t counter = 0;

        struct Frame {
            std::uint32_t v;
            std::size_t child = 0;
        };
        for (std::uint32_t root = 0; root < n; ++root) {
            if (index[root] != UINT32_MAX) continue;
            std::vector<Frame> frames{{root}};
            index[root] = low[root] = counter++;
            stack.push_back(root);
            on_stack[root] = 1;
            while (!frames.empty()) {
                Frame& f = frames.back();
                if (f.child < batch_[f.v].deps.size()) {
                    const std::uint32_t w = batch_[f.v].deps[f.child++];
                    if (index[w] == UINT32_MAX) {
                        index[w] = low[w] = counter++;
                        stack.push_back(w);
                        on_stack[w] = 1;
                        frames.push_back({w});
                    } else if (on_stack[w]) {
                        low[f.v] = std::min(low[f.v], index[w]);
                    }
                } else {
                    if (low[f.v] == index[f.v]) {
                        std::vector<std::uint32_t> component;
                        for (;;) {
                            const std::uint32_t w = stack.back();
                            stack.pop_back();
                            on_stack[w] = 0;
                            component.push_back(w);
                            if (w == f.v) break;
                        }
                        std::sort(component.begin(), component.end());
                        components.push_back(std::move(component));
                    }
                    const std::uint32_t v = f.v;
                    frames.pop_back();
                    if (!frames.empty())
                        low[frames.back().v] = std::min(low[frames.back().v], low[v]);
                }
            }
        }
        return components;
    }

    HSet resolve(const std::string& name, Pos pos) {
        if (auto it = solved_.find(name); it != solved_.end()) return it->second;
        if (auto it = session_.env.find(name); it != session_.env.end()) return it->second;
        throw EvalError("unbound name '" + name + "' at " + std::to_string(pos.line) + ":" +
                        std::to_string(pos.col));
    }

    void solve_component(const std::vector<std::uint32_t>& component) {
        const bool self_recursive = [&] {
            if (component.size() > 1) return true;
            const DefEntry& e = batch_[component[0]];
            return std::find(e.deps.begin(), e.deps.end(), component[0]) != e.deps.end();
        }();

        if (self_recursive) {
            for (std::uint32_t i : component) {
                if (batch_[i].kind == DefEntry::Kind::Strict)
                    throw EvalError("recursive definition of '" + batch_[i].name +
                                    "' passes through an operator; only set braces may recurse");
                if (batch_[i].kind == DefEntry::Kind::Alias)
                    throw EvalError("definition of '" + batch_[i].name +
                                    "' is a cyclic alias with no set structure");
            }
            FlatSystem sys;
            for (std::uint32_t i : component) sys.add_var(batch_[i].name);
            for (std::size_t k = 0; k < component.size(); ++k) {
                const DefEntry& e = batch_[component[k]];
                for (const std::string& ref : e.member_refs) {
                    if (is_batch_name(ref) &&
                        std::find(component.begin(), component.end(), batch_of(ref)) !=
                            component.end()) {
                        sys.add_member_var(static_cast<std::uint32_t>(k), ref);
                    } else {
                        sys.add_member_constant(static_cast<std::uint32_t>(k),
                                                resolve(ref, e.pos));
                    }
                }
                for (const HSet& c : e.member_constants)
                    sys.add_member_constant(static_cast<std::uint32_t>(k), c);
            }
            auto solution = solve(*session_.universe, sys);
            for (std::uint32_t i : component)
                solved_.emplace(batch_[i].name, solution.at(batch_[i].name));
            return;
        }

        DefEntry& e = batch_[component[0]];
        switch (e.kind) {
            case DefEntry::Kind::Alias:
                solved_.emplace(e.name, resolve(e.alias_target, e.pos));
                break;
            case DefEntry::Kind::Strict:
                solved_.emplace(e.name, eval_expr(e.strict_expr));
                break;
            case DefEntry::Kind::Flat: {
                std::vector<HSet> members = e.member_constants;
                for (const std::string& ref : e.member_refs)
                    members.push_back(resolve(ref, e.pos));
                solved_.emplace(e.name, from_elements(*session_.universe, members));
                break;
            }
        }
    }

    void solve_batch() {
        compute_dependencies();
        for (const auto& component : scc_order()) solve_component(component);
        for (const std::string& name : user_defs_) {
            session_.env.insert_or_assign(name, solved_.at(name));
            if (std::find(session_.def_order.begin(), session_.def_order.end(), name) ==
                session_.def_order.end())
                session_.def_order.push_back(name);
        }
    }

    // ---- expression evaluation -----------------------------------------

    HSet eval_expr(const Node& node) {
        switch (node.kind) {
            case Node::Kind::Name:
                return resolve(node.name, node.pos);
            case Node::Kind::Numeral:
                return numeral(*session_.universe, node.number);
            case Node::Kind::SetLiteral: {
                std::vector<HSet> members;
                members.reserve(node.children.size());
                for (const Node& child : node.children) members.push_back(eval_expr(child));
                return from_elements(*session_.universe, members);
            }
            case Node::Kind::Builtin: {
                std::vector<HSet> args;
                args.reserve(node.children.size());
                for (const Node& child : node.children) args.push_back(eval_expr(child));
                if (node.name == "pair") return pair(args[0], args[1]);
                if (node.name == "union") return union_of(args[0]);
                if (node.name == "inter") return intersect(args[0], args[1]);
                if (node.name == "pow") return powerset(args[0]);
                if (node.name == "exp") return exponential(args[0], args[1]);
                if (node.name == "kpair") return kuratowski_pair(args[0], args[1]);
                throw EvalError("unknown operator '" + node.name + "'");
            }
            case Node::Kind::Binder:
                throw EvalError("internal: binder survived lifting");
        }
        throw EvalError("internal: unknown expression kind");
    }

    // ---- statement execution -------------------------------------------

    void print_value(const HSet& x) {
        output_.lines.push_back(print_canonical(x, session_.print_depth));
        output_.value = x;
    }

    static std::uint64_t parse_option_number(const Statement& st, const std::string& key) {
        try {
            return std::stoull(st.options.at(key));
        } catch (const std::exception&) {
            throw EvalError("option '" + key + "' expects a number");
        }
    }

    void run_check(const Statement& st) {
        GenConfig cfg = session_.check_defaults;
        if (st.options.count("samples"))
            cfg.samples = static_cast<std::uint32_t>(parse_option_number(st, "samples"));
        if (st.options.count("seed")) cfg.seed = parse_option_number(st, "seed");
        if (st.options.count("nodes"))
            cfg.max_nodes = static_cast<std::uint32_t>(parse_option_number(st, "nodes"));
        std::vector<std::string> axioms;
        if (st.options.count("axiom")) axioms.push_back(st.options.at("axiom"));
        else axioms = supported_axioms();

        for (const std::string& axiom : axioms) {
            Universe scratch;  // checks do not pollute the session universe
            const Report report = run_axiom_check(axiom, scratch, cfg);
            std::ostringstream line;
            line << report.axiom << '\t' << (report.passed() ? "PASS" : "FAIL") << '\t'
                 << report.samples_run << '\t' << cfg.seed;
            output_.lines.push_back(line.str());
            for (const CheckFailure& f : report.failures)
                output_.lines.push_back("# failure seed=" + std::to_string(f.seed) + ": " +
                                        f.message);
        }
    }

    void execute_statements() {
        for (const Statement& st : rewritten_) {
            if (session_.quit_requested) break;
            switch (st.kind) {
                case Statement::Kind::Definition:
                    break;  // already solved
                case Statement::Kind::Expression:
                    print_value(eval_expr(st.exprs[0]));
                    break;
                case Statement::Kind::EqTest: {
                    const HSet a = eval_expr(st.exprs[0]);
                    const HSet b = eval_expr(st.exprs[1]);
                    output_.lines.push_back(equals(a, b) ? "true" : "false");
                    break;
                }
                case Statement::Kind::Command:
                    execute_command(st);
                    break;
            }
        }
    }

    void execute_command(const Statement& st) {
        if (st.name == "min") {
            print_value(eval_expr(st.exprs[0]));
        } else if (st.name == "pow") {
            print_value(powerset(eval_expr(st.exprs[0])));
        } else if (st.name == "exp") {
            print_value(exponential(eval_expr(st.exprs[0]), eval_expr(st.exprs[1])));
        } else if (st.name == "solve") {
            for (const std::string& name : session_.def_order)
                output_.lines.push_back(
                    name + " = " + print_canonical(session_.env.at(name), session_.print_depth));
        } else if (st.name == "check") {
            run_check(st);
        } else if (st.name == "print") {
            const std::string& depth = st.options.at("depth");
            if (depth == "unlimited") session_.print_depth.reset();
            else session_.print_depth = parse_option_number(st, "depth");
        } else if (st.name == "reset") {
            session_.reset();
        } else if (st.name == "help") {
            output_.lines.push_back(
                "statements: name = expr;  expr  expr :eq expr\n"
                "expressions: {a, b}  μx.{x}  (alias: mu x.{x})  numerals  pair/union/inter/"
                "pow/exp/kpair(...)\n"
                "commands: :min e  :pow e  :exp e f  :solve  :check [axiom] [samples=N] "
                "[seed=S]  :print depth=N|unlimited  :reset  :quit");
        } else if (st.name == "quit" || st.name == "q") {
            session_.quit_requested = true;
        } else {
            throw EvalError("unknown command ':" + st.name + "'");
        }
    }

    Session& session_;
    const Program& program_;
    std::vector<Statement> rewritten_;
    std::vector<DefEntry> batch_;
    std::unordered_map<std::string, std::uint32_t> batch_index_;
    std::vector<std::string> user_defs_;
    std::unordered_map<std::string, HSet> solved_;
    std::uint64_t fresh_counter_ = 0;
    EvalOutput output_;
};

}  // namespace

EvalOutput eval_program(Session& session, const Program& program) {
    return Evaluator(session, program).run();
}

}  // namespace hydra::expr
