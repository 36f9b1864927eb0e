import type {
  EditOpBody,
  LayoutView,
  OpResponse,
  Snapshot,
  StrokeResponse,
  TaskDescriptorView,
  TreeGeometry,
} from "./types";

/** Thrown for structured error bodies ({code, message, detail}). */
export class ServiceError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly detail: Record<string, unknown> = {},
  ) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  const text = await response.text();
  const body = text ? JSON.parse(text) : {};
  if (!response.ok) {
    throw new ServiceError(
      body.code ?? `http_${response.status}`,
      body.message ?? response.statusText,
      body.detail ?? {},
    );
  }
  return body as T;
}

/** Thin typed client for the annotation service. */
export class ApiClient {
  constructor(readonly baseUrl: string = "") {}

  private post<T>(path: string, body: unknown): Promise<T> {
    return request<T>(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  listTasks(): Promise<{ tasks: TaskDescriptorView[] }> {
    return request(this.baseUrl + "/tasks");
  }

  getTask(taskId: string): Promise<TaskDescriptorView> {
    return request(this.baseUrl + `/tasks/${taskId}`);
  }

  openSession(
    taskId: string,
    options: { sentence_index?: number; seed?: number } = {},
  ): Promise<{ session_id: string; snapshot: Snapshot }> {
    return this.post(`/tasks/${taskId}/sessions`, options);
  }

  getSnapshot(sessionId: string): Promise<Snapshot> {
    return request(this.baseUrl + `/sessions/${sessionId}`);
  }

  applyOp(sessionId: string, op: EditOpBody): Promise<OpResponse> {
    return this.post(`/sessions/${sessionId}/ops`, op);
  }

  undo(sessionId: string): Promise<{ snapshot: Snapshot }> {
    return this.post(`/sessions/${sessionId}/undo`, {});
  }

  redo(sessionId: string): Promise<{ snapshot: Snapshot }> {
    return this.post(`/sessions/${sessionId}/redo`, {});
  }

  layout(sessionId: string): Promise<LayoutView> {
    return request(this.baseUrl + `/sessions/${sessionId}/layout`);
  }

  treeLayout(sessionId: string): Promise<TreeGeometry> {
    return request(this.baseUrl + `/sessions/${sessionId}/tree_layout`);
  }

  sendStroke(
    sessionId: string,
    points: [number, number][],
    timestamp = 0,
  ): Promise<StrokeResponse> {
    return this.post(`/sessions/${sessionId}/stroke`, { points, timestamp });
  }

  async downloadResult(
    sessionId: string,
  ): Promise<{ content: string; mime: string }> {
    const response = await fetch(this.baseUrl + `/sessions/${sessionId}/result`);
    if (!response.ok) {
      const body = await response.json();
      throw new ServiceError(body.code, body.message, body.detail);
    }
    return {
      content: await response.text(),
      mime: response.headers.get("content-type") ?? "text/plain",
    };
  }
}
