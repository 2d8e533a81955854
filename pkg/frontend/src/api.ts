/**
 * Typed client for the gateway HTTP/JSON API. The frontend talks to the
 * backend exclusively through this module.
 */

export type Phase = 'instructions' | 'in_trial' | 'confirmation' | 'rest' | 'done';

export interface CreateSessionResult {
  session_id: string;
  state: string;
  instructions: string;
}

export interface CurrentPayload {
  phase: Phase;
  trial_index: number | null;
  total: number;
  rest: boolean;
  progress: { completed: number; total: number };
  instructions?: string;
  image?: string;
  options?: string[];
  option_ids?: number[];
  practice_feedback_enabled?: boolean;
  trial_phase?: 'practice' | 'test';
  auto_advance_ms?: number | null;
  feedback_correct?: boolean | null;
  test_completed?: number;
  test_total?: number;
}

export interface SubmitBody {
  choice_index: number;
  confidence: number;
  reaction_time_ms: number;
}

export interface SubmitResult {
  accepted: boolean;
  correct: boolean | null;
  next_state: string;
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(public readonly status: number, message: string) {
    super(message);
    this.name = 'ApiError';
  }
}

export class GatewayClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, init);
    if (!response.ok) {
      const detail = await response.text().catch(() => '');
      throw new ApiError(response.status, detail || `HTTP ${response.status}`);
    }
    return (await response.json()) as T;
  }

  createSession(agentId: string): Promise<CreateSessionResult> {
    return this.request('/sessions', {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ agent_id: agentId }),
    });
  }

  current(sessionId: string): Promise<CurrentPayload> {
    return this.request(`/sessions/${sessionId}/current`);
  }

  submit(sessionId: string, body: SubmitBody): Promise<SubmitResult> {
    return this.request(`/sessions/${sessionId}/response`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
    });
  }

  /** Advance past instructions, confirmation, or rest. A 409 means the
   * server already moved on (e.g. the auto-advance fired first): benign. */
  async advance(sessionId: string): Promise<void> {
    try {
      await this.request(`/sessions/${sessionId}/continue`, { method: 'POST' });
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) return;
      throw err;
    }
  }
}
