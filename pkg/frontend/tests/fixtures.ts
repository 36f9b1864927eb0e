import type {
  ClusterState,
  LayoutView,
  Snapshot,
  TaskDescriptorView,
  TreeGeometry,
  TreeState,
} from "../src/types";

export const GREY = "#999999";

export function clusterTask(): TaskDescriptorView {
  return {
    task_id: "t-cluster",
    kind: "clustering",
    payload: {
      text: "alpha beta gamma",
      mentions: [
        { id: 1, token_index: 0, surface: "alpha" },
        { id: 2, token_index: 1, surface: "beta" },
        { id: 3, token_index: 2, surface: "gamma" },
      ],
    },
    display_html: "<p>read the article</p>",
  };
}

export function clusterState(
  colors: Record<number, string> = {},
  links: [number, number][] = [],
): ClusterState {
  const groups = new Map<string, number[]>();
  const mentions = [1, 2, 3].map((id) => ({
    id,
    token_index: id - 1,
    surface: ["alpha", "beta", "gamma"][id - 1],
    abbreviation: ["alpha", "beta", "gamma"][id - 1],
    color: colors[id] ?? GREY,
  }));
  for (const m of mentions) {
    const key = m.color === GREY ? `grey-${m.id}` : m.color;
    groups.set(key, [...(groups.get(key) ?? []), m.id]);
  }
  return {
    kind: "clustering",
    mentions,
    links,
    groups: [...groups.entries()].map(([, members]) => ({
      color: mentions.find((m) => m.id === members[0])!.color,
      members,
    })),
  };
}

export function clusterSnapshot(
  state: ClusterState,
  cursor = 0,
  opCount = cursor,
): Snapshot {
  return {
    session_id: "s-cluster",
    task_id: "t-cluster",
    kind: "clustering",
    sentence_index: 0,
    cursor,
    op_count: opCount,
    can_undo: cursor > 0,
    can_redo: cursor < opCount,
    state,
  };
}

export function layoutView(): LayoutView {
  return {
    positions: { "1": [100, 100], "2": [200, 100], "3": [300, 200] },
    canvas: [400, 300],
    radius: 30,
  };
}

export function treeTask(): TaskDescriptorView {
  return {
    task_id: "t-parse",
    kind: "parsing",
    payload: { sentences: [["a", "b", "c", "d"]] },
    display_html: "",
  };
}

export function flatTreeState(): TreeState {
  return {
    kind: "parsing",
    tokens: ["a", "b", "c", "d"],
    virtual_root: 0,
    next_id: 5,
    nodes: [
      { id: 0, children: [1, 2, 3, 4], folded: false },
      { id: 1, token_index: 0 },
      { id: 2, token_index: 1 },
      { id: 3, token_index: 2 },
      { id: 4, token_index: 3 },
    ],
  };
}

export function groupedTreeState(folded = false): TreeState {
  return {
    kind: "parsing",
    tokens: ["a", "b", "c", "d"],
    virtual_root: 0,
    next_id: 6,
    nodes: [
      { id: 0, children: [5, 4], folded: false },
      { id: 1, token_index: 0 },
      { id: 2, token_index: 1 },
      { id: 3, token_index: 2 },
      { id: 4, token_index: 3 },
      { id: 5, children: [1, 2, 3], folded },
    ],
  };
}

export function flatGeometry(): TreeGeometry {
  const leafPos = (i: number): [number, number] => [0, (i - 1) * 40];
  return {
    positions: {
      "0": [120, 60],
      "1": leafPos(1),
      "2": leafPos(2),
      "3": leafPos(3),
      "4": leafPos(4),
    },
    edges: [1, 2, 3, 4].map((i) => ({
      child: i,
      parent: 0,
      p_child: leafPos(i),
      p_parent: [120, 60],
      child_min_token: i - 1,
    })),
  };
}

export function groupedGeometry(folded = false): TreeGeometry {
  if (folded) {
    return {
      positions: { "0": [120, 80], "5": [0, 40], "4": [0, 120] },
      edges: [
        { child: 5, parent: 0, p_child: [0, 40], p_parent: [120, 80],
          child_min_token: 0 },
        { child: 4, parent: 0, p_child: [0, 120], p_parent: [120, 80],
          child_min_token: 3 },
      ],
    };
  }
  return {
    positions: {
      "0": [240, 80],
      "1": [0, 0],
      "2": [0, 40],
      "3": [0, 80],
      "4": [0, 120],
      "5": [120, 40],
    },
    edges: [
      { child: 1, parent: 5, p_child: [0, 0], p_parent: [120, 40],
        child_min_token: 0 },
      { child: 2, parent: 5, p_child: [0, 40], p_parent: [120, 40],
        child_min_token: 1 },
      { child: 3, parent: 5, p_child: [0, 80], p_parent: [120, 40],
        child_min_token: 2 },
      { child: 5, parent: 0, p_child: [120, 40], p_parent: [240, 80],
        child_min_token: 0 },
      { child: 4, parent: 0, p_child: [0, 120], p_parent: [240, 80],
        child_min_token: 3 },
    ],
  };
}

export function treeSnapshot(
  state: TreeState,
  cursor = 0,
  opCount = cursor,
): Snapshot {
  return {
    session_id: "s-parse",
    task_id: "t-parse",
    kind: "parsing",
    sentence_index: 0,
    cursor,
    op_count: opCount,
    can_undo: cursor > 0,
    can_redo: cursor < opCount,
    state,
  };
}

export interface RouteCall {
  url: string;
  method: string;
  body: unknown;
}

/** fetch stub with a URL-keyed routing table; records every call. */
export function fetchRouter(
  routes: Record<string, (call: RouteCall) => unknown>,
) {
  const calls: RouteCall[] = [];
  const impl = async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    const call: RouteCall = {
      url,
      method: init?.method ?? "GET",
      body: init?.body ? JSON.parse(String(init.body)) : null,
    };
    calls.push(call);
    const key = `${call.method} ${url}`;
    const handler = routes[key];
    if (!handler) {
      return new Response(
        JSON.stringify({ code: "NoRoute", message: key, detail: {} }),
        { status: 404, headers: { "content-type": "application/json" } },
      );
    }
    const result = handler(call);
    if (result instanceof Response) return result;
    return new Response(JSON.stringify(result), {
      status: 200,
      headers: { "content-type": "application/json" },
    });
  };
  return { impl, calls };
}

export function rgb(hex: string): string {
  const value = hex.replace("#", "");
  const r = parseInt(value.slice(0, 2), 16);
  const g = parseInt(value.slice(2, 4), 16);
  const b = parseInt(value.slice(4, 6), 16);
  return `rgb(${r}, ${g}, ${b})`;
}

export function mouse(
  type: string,
  clientX: number,
  clientY: number,
): MouseEvent {
  return new MouseEvent(type, { bubbles: true, clientX, clientY });
}
