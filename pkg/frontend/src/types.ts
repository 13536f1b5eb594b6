/** Wire types for the nanolog service (terms travel as canonical text). */

export interface RuleEntry {
  index: number;
  text: string;
}

export interface TraceStep {
  rule: string;
  goal: string;
}

export interface Solution {
  bindings: Record<string, string>;
  trace: TraceStep[];
  cyclic: boolean;
}

export interface QueryResponse {
  solutions: Solution[];
  exhausted: boolean;
  budget_hit: string | null;
}

export type NodeStatus = "open" | "complete";

export interface ProofNode {
  goal: string;
  applied_rule: string | null;
  status: NodeStatus;
  children: ProofNode[];
}

export interface ApiErrorBody {
  code: string;
  message: string;
  position?: { line: number; column: number };
}

export interface QueryOptions {
  strategy?: "dfs" | "bfs" | "iddfs";
  max_depth?: number;
  max_solutions?: number;
}
