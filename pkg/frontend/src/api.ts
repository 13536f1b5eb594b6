import { ApiErrorBody, ProofNode, QueryOptions, QueryResponse, RuleEntry } from "./types.js";

/** Error carrying the service's machine-readable code and, for rejected
 * proof operations, the (unchanged) tree the server sent back. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly body: ApiErrorBody,
    readonly tree: ProofNode | null = null,
  ) {
    super(body.message);
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let body: ApiErrorBody = { code: "unknown", message: `HTTP ${response.status}` };
  let tree: ProofNode | null = null;
  try {
    const payload = await response.json();
    if (payload.error) body = payload.error;
    if (payload.tree) tree = payload.tree;
  } catch {
    // non-JSON error body; keep the fallback
  }
  return new ApiError(response.status, body, tree);
}

export class ApiClient {
  constructor(readonly baseUrl: string = "") {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) throw await parseError(response);
    if (response.status === 204) return undefined as T;
    return (await response.json()) as T;
  }

  createWorkspace(id: string): Promise<{ id: string; rules: RuleEntry[] }> {
    return this.request("POST", "/api/workspaces", { id });
  }

  listRules(workspace: string): Promise<RuleEntry[]> {
    return this.request("GET", `/api/workspaces/${workspace}/rules`);
  }

  addRule(workspace: string, text: string): Promise<RuleEntry> {
    return this.request("POST", `/api/workspaces/${workspace}/rules`, { text });
  }

  deleteRule(workspace: string, index: number): Promise<void> {
    return this.request("DELETE", `/api/workspaces/${workspace}/rules/${index}`);
  }

  query(workspace: string, goals: string, options?: QueryOptions): Promise<QueryResponse> {
    return this.request("POST", `/api/workspaces/${workspace}/query`, { goals, options });
  }

  createProof(workspace: string, goal: string): Promise<{ proof_id: string; tree: ProofNode }> {
    return this.request("POST", "/api/proofs", { workspace, goal });
  }

  getProof(pid: string): Promise<{ tree: ProofNode }> {
    return this.request("GET", `/api/proofs/${pid}`);
  }

  applyRule(pid: string, path: number[], ruleIndex: number): Promise<{ tree: ProofNode }> {
    return this.request("POST", `/api/proofs/${pid}/apply`, {
      path,
      rule_index: ruleIndex,
    });
  }

  substitute(pid: string, variable: string, term: string): Promise<{ tree: ProofNode }> {
    return this.request("POST", `/api/proofs/${pid}/substitute`, { var: variable, term });
  }

  undo(pid: string): Promise<{ tree: ProofNode }> {
    return this.request("POST", `/api/proofs/${pid}/undo`);
  }
}
